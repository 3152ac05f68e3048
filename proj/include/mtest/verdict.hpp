#pragma once

#include <string>
#include <utility>

namespace mtest {

/// Outcome of evaluating one test case: Pass, Fail (with a message), or
/// Discard (the case did not meet its precondition and was not executed).
class Verdict {
public:
    enum class Kind { pass, fail, discard };

    static Verdict pass() { return Verdict(Kind::pass, {}); }
    static Verdict fail(std::string message) { return Verdict(Kind::fail, std::move(message)); }
    static Verdict discard() { return Verdict(Kind::discard, {}); }

    Kind kind() const noexcept { return kind_; }
    bool is_pass() const noexcept { return kind_ == Kind::pass; }
    bool is_fail() const noexcept { return kind_ == Kind::fail; }
    bool is_discard() const noexcept { return kind_ == Kind::discard; }
    const std::string& message() const noexcept { return message_; }

    friend bool operator==(const Verdict&, const Verdict&) = default;

private:
    Verdict(Kind kind, std::string message) : kind_(kind), message_(std::move(message)) {}
    Kind kind_;
    std::string message_;
};

inline Verdict verdict_from(bool holds, const std::string& on_fail) {
    return holds ? Verdict::pass() : Verdict::fail(on_fail);
}

} // namespace mtest
