#include "mtest/suites.hpp"

#include <algorithm>

#include "mtest/bst.hpp"
#include "mtest/expr.hpp"

namespace mtest {

namespace {

struct ReverseCase {
    std::vector<std::int64_t> values;
    std::int64_t extra = 0;
};

std::string show_reverse_case(const ReverseCase& c) {
    std::string out = "{xs=[";
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(c.values[i]);
    }
    out += "], a=" + std::to_string(c.extra) + "}";
    return out;
}

std::vector<std::int64_t> reversed(std::vector<std::int64_t> xs) {
    std::reverse(xs.begin(), xs.end());
    return xs;
}

std::vector<SuiteEntry> reverse_suite(SizeParams size) {
    const auto magnitude = static_cast<std::int64_t>(size.magnitude);
    Generator<ReverseCase> cases(
        "reverse-case", [size, magnitude](ChoiceSource& src, std::uint32_t) {
            ReverseCase c;
            const std::uint64_t len = src.draw(size.magnitude + 1);
            for (std::uint64_t i = 0; i < len; ++i) {
                c.values.push_back(-magnitude + static_cast<std::int64_t>(src.draw(
                                                    2 * static_cast<std::uint64_t>(magnitude) + 1)));
            }
            c.extra = -magnitude + static_cast<std::int64_t>(
                                       src.draw(2 * static_cast<std::uint64_t>(magnitude) + 1));
            return c;
        });

    Property<ReverseCase> involution(
        "reverse/involution", cases, [](const ReverseCase&) { return true; },
        [](const ReverseCase& c) {
            return verdict_from(reversed(reversed(c.values)) == c.values,
                                "reverse(reverse xs) != xs for " + show_reverse_case(c));
        },
        show_reverse_case);

    Property<ReverseCase> append_head =
        involution.with_check("reverse/append-head", [](const ReverseCase& c) {
            std::vector<std::int64_t> appended = c.values;
            appended.push_back(c.extra);
            std::vector<std::int64_t> expected = {c.extra};
            for (std::int64_t v : reversed(c.values)) expected.push_back(v);
            return verdict_from(reversed(appended) == expected,
                                "reverse(xs++[a]) != [a]++reverse(xs) for " +
                                    show_reverse_case(c));
        });

    return {erase_property(involution), erase_property(append_head)};
}

std::vector<SuiteEntry> concat(std::vector<std::vector<SuiteEntry>> parts) {
    std::vector<SuiteEntry> out;
    for (auto& part : parts) {
        for (auto& entry : part) out.push_back(std::move(entry));
    }
    return out;
}

} // namespace

Property<std::int64_t> less_than_77_property() {
    return Property<std::int64_t>(
        "demo/less-than-77", int_in_range(0, 200), [](const std::int64_t&) { return true; },
        [](const std::int64_t& x) {
            return verdict_from(x < 77, std::to_string(x) + " is not below 77");
        },
        [](const std::int64_t& x) { return std::to_string(x); });
}

const std::vector<SuiteBinding>& suite_registry() {
    static const std::vector<SuiteBinding> registry = [] {
        std::vector<SuiteBinding> out;
        out.push_back({"bst", [](SizeParams size) {
                           return concat({bst::suite(bst::correct_ops(), size),
                                          bst::suite(bst::fault1_ops(), size),
                                          bst::suite(bst::fault2_ops(), size)});
                       }});
        out.push_back(
            {"bst-correct", [](SizeParams size) { return bst::suite(bst::correct_ops(), size); }});
        out.push_back(
            {"bst-fault1", [](SizeParams size) { return bst::suite(bst::fault1_ops(), size); }});
        out.push_back(
            {"bst-fault2", [](SizeParams size) { return bst::suite(bst::fault2_ops(), size); }});
        out.push_back({"compiler", [](SizeParams size) {
                           return concat(
                               {expr::suite(expr::compile, "compiler", size),
                                expr::suite(expr::compile_faulty, "compiler-fault", size)});
                       }});
        out.push_back({"compiler-correct", [](SizeParams size) {
                           return expr::suite(expr::compile, "compiler", size);
                       }});
        out.push_back({"compiler-fault", [](SizeParams size) {
                           return expr::suite(expr::compile_faulty, "compiler-fault", size);
                       }});
        out.push_back({"reverse", reverse_suite});
        return out;
    }();
    return registry;
}

const SuiteBinding* find_suite(std::string_view name) {
    for (const SuiteBinding& binding : suite_registry()) {
        if (binding.name == name) return &binding;
    }
    return nullptr;
}

std::string ReplayFile::to_string() const {
    return "mtreplay-v1|" + std::to_string(seed) + "|" + suite + "|" + property + "|" +
           log.to_string();
}

ReplayFile ReplayFile::parse(std::string_view text) {
    // Tolerate one trailing newline; the payload itself is a single line.
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);

    constexpr std::string_view tag = "mtreplay-v1|";
    if (text.substr(0, tag.size()) != tag) throw parse_error("replay file: missing version tag");
    text.remove_prefix(tag.size());

    auto take_field = [&text](const char* what) {
        const std::size_t bar = text.find('|');
        if (bar == std::string_view::npos)
            throw parse_error(std::string("replay file: missing field: ") + what);
        std::string_view field = text.substr(0, bar);
        text.remove_prefix(bar + 1);
        return field;
    };

    ReplayFile out;
    const std::string_view seed_text = take_field("seed");
    std::uint64_t seed = 0;
    for (char ch : seed_text) {
        if (ch < '0' || ch > '9') throw parse_error("replay file: seed must be decimal");
        seed = seed * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    if (seed_text.empty()) throw parse_error("replay file: empty seed");
    out.seed = seed;
    out.suite = std::string(take_field("suite"));
    out.property = std::string(take_field("property"));
    out.log = ChoiceLog::parse(text);
    return out;
}

} // namespace mtest
