#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtest/seed.hpp"

namespace mtest {

/// Caller broke an interface precondition (bad bound, empty list, ...).
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A replayed log ran out of recorded choices before the generator finished.
class replay_underflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A filtered generator exhausted its retry budget; the test case is counted
/// but not executed.
class discard_signal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed serialized input (choice log or replay file).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Choice {
    std::uint64_t value = 0;
    std::uint64_t bound = 1;
    friend bool operator==(const Choice&, const Choice&) = default;
};

/// Ordered record of the bounded draws made while generating one value.
/// Replaying a log through the generator that produced it reconstructs the
/// identical value; shrinking works by replaying smaller logs.
class ChoiceLog {
public:
    ChoiceLog() = default;
    explicit ChoiceLog(std::vector<Choice> choices);

    void push(std::uint64_t value, std::uint64_t bound);

    std::size_t size() const noexcept { return choices_.size(); }
    bool empty() const noexcept { return choices_.empty(); }
    const Choice& operator[](std::size_t i) const { return choices_[i]; }
    auto begin() const noexcept { return choices_.begin(); }
    auto end() const noexcept { return choices_.end(); }

    void truncate(std::size_t n);

    ChoiceLog without_block(std::size_t start, std::size_t len) const;
    ChoiceLog with_value(std::size_t index, std::uint64_t value) const;

    /// `v1:<len>:<value>,<bound>;...`, newline-free ASCII; bit-exact
    /// round-trip with parse().
    std::string to_string() const;
    static ChoiceLog parse(std::string_view text);

    friend bool operator==(const ChoiceLog&, const ChoiceLog&) = default;

private:
    std::vector<Choice> choices_;
};

/// Shrink ordering: shorter logs first, then lexicographic on drawn values.
std::strong_ordering size_lex_order(const ChoiceLog& a, const ChoiceLog& b) noexcept;

/// Source of bounded draws. Generators pull every bit of randomness through
/// draw(), which records (value, bound) pairs so the run can be replayed.
class ChoiceSource {
public:
    virtual ~ChoiceSource() = default;

    /// Uniform draw in [0, bound); bound must be >= 1. Appends the choice to
    /// the recorded log.
    std::uint64_t draw(std::uint64_t bound);

    const ChoiceLog& recorded() const noexcept { return recorded_; }

    /// Checkpoint/rollback over the recorded log; used by filtering
    /// combinators so rejected attempts leave no trace in the final log.
    std::size_t mark() const noexcept { return recorded_.size(); }
    void rollback(std::size_t mark) { recorded_.truncate(mark); }

    void note_discard() noexcept { ++discards_; }
    std::uint64_t discards() const noexcept { return discards_; }

protected:
    virtual std::uint64_t next_value(std::uint64_t bound) = 0;

private:
    ChoiceLog recorded_;
    std::uint64_t discards_ = 0;
};

/// Fresh draws from a deterministic stream.
class RandomSource final : public ChoiceSource {
public:
    explicit RandomSource(Seed seed) noexcept : seed_(seed), stream_(seed) {}
    Seed seed() const noexcept { return seed_; }

protected:
    std::uint64_t next_value(std::uint64_t bound) override { return stream_.below(bound); }

private:
    Seed seed_;
    SplitMix stream_;
};

/// Serves a previously recorded log. When the requested bound differs from
/// the recorded one (a shrink changed generator control flow), the recorded
/// value is clamped modulo the new bound. Draws past the end of the log
/// throw replay_underflow. Unconsumed trailing choices are permitted; the
/// recorded() log of this source is the effective, consumed prefix.
class ReplaySource final : public ChoiceSource {
public:
    explicit ReplaySource(ChoiceLog source) : source_(std::move(source)) {}

    std::size_t consumed() const noexcept { return cursor_; }
    bool fully_consumed() const noexcept { return cursor_ == source_.size(); }

protected:
    std::uint64_t next_value(std::uint64_t bound) override;

private:
    ChoiceLog source_;
    std::size_t cursor_ = 0;
};

} // namespace mtest
