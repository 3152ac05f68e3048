#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mtest/engine.hpp"

namespace mtest {

/// Named suite of properties, built against the size parameters in effect.
struct SuiteBinding {
    std::string name;
    std::function<std::vector<SuiteEntry>(SizeParams)> build;
};

/// Fixed registry: bst, bst-correct, bst-fault1, bst-fault2, compiler,
/// compiler-correct, compiler-fault, reverse.
const std::vector<SuiteBinding>& suite_registry();
const SuiteBinding* find_suite(std::string_view name);

/// Demonstration property: x drawn from [0, 200] must stay below 77; the
/// minimal counterexample is exactly 77.
Property<std::int64_t> less_than_77_property();

/// Single-line replay record:
/// `mtreplay-v1|<seed>|<suite>|<property>|<choicelog-v1>`.
struct ReplayFile {
    std::uint64_t seed = 0;
    std::string suite;
    std::string property;
    ChoiceLog log;

    std::string to_string() const;
    static ReplayFile parse(std::string_view text);

    friend bool operator==(const ReplayFile&, const ReplayFile&) = default;
};

} // namespace mtest
