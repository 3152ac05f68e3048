#include "mtest/choice.hpp"

#include <charconv>

namespace mtest {

ChoiceLog::ChoiceLog(std::vector<Choice> choices) : choices_(std::move(choices)) {
    for (const Choice& c : choices_) {
        if (c.bound == 0) throw contract_error("ChoiceLog: bound must be positive");
        if (c.value >= c.bound) throw contract_error("ChoiceLog: value must be below bound");
    }
}

void ChoiceLog::push(std::uint64_t value, std::uint64_t bound) {
    if (bound == 0) throw contract_error("ChoiceLog: bound must be positive");
    if (value >= bound) throw contract_error("ChoiceLog: value must be below bound");
    choices_.push_back(Choice{value, bound});
}

void ChoiceLog::truncate(std::size_t n) {
    if (n < choices_.size()) choices_.resize(n);
}

ChoiceLog ChoiceLog::without_block(std::size_t start, std::size_t len) const {
    ChoiceLog out;
    out.choices_.reserve(choices_.size() - len);
    for (std::size_t i = 0; i < choices_.size(); ++i) {
        if (i >= start && i < start + len) continue;
        out.choices_.push_back(choices_[i]);
    }
    return out;
}

ChoiceLog ChoiceLog::with_value(std::size_t index, std::uint64_t value) const {
    ChoiceLog out = *this;
    out.choices_[index].value = value;
    return out;
}

std::string ChoiceLog::to_string() const {
    std::string out = "v1:" + std::to_string(choices_.size()) + ":";
    for (const Choice& c : choices_) {
        out += std::to_string(c.value);
        out += ',';
        out += std::to_string(c.bound);
        out += ';';
    }
    return out;
}

namespace {

std::uint64_t parse_u64(std::string_view text, std::size_t& pos, char terminator) {
    const std::size_t end = text.find(terminator, pos);
    if (end == std::string_view::npos || end == pos)
        throw parse_error("choice log: expected unsigned integer before '" +
                          std::string(1, terminator) + "'");
    std::uint64_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw parse_error("choice log: malformed integer");
    pos = end + 1;
    return value;
}

} // namespace

ChoiceLog ChoiceLog::parse(std::string_view text) {
    constexpr std::string_view prefix = "v1:";
    if (text.substr(0, prefix.size()) != prefix)
        throw parse_error("choice log: missing v1 prefix");
    std::size_t pos = prefix.size();
    const std::uint64_t count = parse_u64(text, pos, ':');
    ChoiceLog out;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t value = parse_u64(text, pos, ',');
        const std::uint64_t bound = parse_u64(text, pos, ';');
        if (bound == 0) throw parse_error("choice log: zero bound");
        if (value >= bound) throw parse_error("choice log: value not below bound");
        out.push(value, bound);
    }
    if (pos != text.size()) throw parse_error("choice log: trailing bytes");
    return out;
}

std::strong_ordering size_lex_order(const ChoiceLog& a, const ChoiceLog& b) noexcept {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].value != b[i].value) return a[i].value <=> b[i].value;
    }
    return std::strong_ordering::equal;
}

std::uint64_t ChoiceSource::draw(std::uint64_t bound) {
    if (bound == 0) throw contract_error("draw: bound must be positive");
    const std::uint64_t value = next_value(bound);
    recorded_.push(value, bound);
    return value;
}

std::uint64_t ReplaySource::next_value(std::uint64_t bound) {
    if (cursor_ >= source_.size())
        throw replay_underflow("replay exhausted after " + std::to_string(cursor_) + " choices");
    const std::uint64_t recorded = source_[cursor_++].value;
    return recorded % bound;
}

} // namespace mtest
