#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtest/choice.hpp"
#include "mtest/seed.hpp"
#include "mtest/shrink.hpp"

namespace mtest {

/// Outcome of checking one property: Passed(n_run, n_discarded),
/// Failed(counterexample, shrink, seed, replay_log) or GaveUp(n_discarded).
/// For Failed reports, `seed` is the failing case's own seed and replay_log
/// reproduces the failure deterministically; otherwise `seed` is the seed
/// the whole check ran with.
struct TestReport {
    enum class Status { passed, failed, gave_up };

    std::string property_name;
    Status status = Status::passed;
    std::uint64_t tests_run = 0;
    std::uint64_t discarded = 0;
    std::string counterexample; // empty unless failed
    Seed seed{0};
    ChoiceLog replay_log; // empty unless failed
    ShrinkOutcome shrink; // zeroed unless failed
};

std::string status_name(TestReport::Status status);

/// Stable-key-order JSON object:
/// property, status, tests_run, discarded, counterexample, seed, replay,
/// shrink_steps.
std::string report_to_json(const TestReport& report, int indent = 2);

/// JSON array over reports, same per-report schema.
std::string reports_to_json(const std::vector<TestReport>& reports, int indent = 2);

} // namespace mtest
