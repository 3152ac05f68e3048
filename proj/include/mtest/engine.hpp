#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtest/property.hpp"
#include "mtest/report.hpp"
#include "mtest/shrink.hpp"

namespace mtest {

struct TestConfig {
    std::uint64_t num_tests = 100;
    Seed seed{0};
    SizeParams size{};
    std::uint64_t max_shrink_budget = 2000;
    double max_discard_ratio = 10.0;
};

namespace detail {

/// Check evaluation folds the validity precondition in front of the user
/// check; exceptions escaping the check count as failures.
template <typename T>
Verdict evaluate_case(const Property<T>& prop, const T& value) {
    if (!prop.valid(value)) return Verdict::discard();
    try {
        return prop.run_check(value);
    } catch (const std::exception& e) {
        return Verdict::fail(std::string("exception: ") + e.what());
    }
}

} // namespace detail

/// Runs a property until cfg.num_tests cases have executed, deriving each
/// case's seed by split-chaining from cfg.seed. Invalid inputs count as
/// discards and do not consume the test budget; the run gives up once
/// discards exceed max_discard_ratio * num_tests. The first failing case is
/// minimized and reported with its seed and replayable choice log.
template <typename T>
TestReport check(const Property<T>& prop, const TestConfig& cfg) {
    if (cfg.num_tests < 1) throw contract_error("check: num_tests must be positive");

    const double cap = cfg.max_discard_ratio * static_cast<double>(cfg.num_tests);
    const std::uint64_t discard_cap =
        cap < 1.0 ? 1 : static_cast<std::uint64_t>(std::llround(cap));

    Seed chain = cfg.seed;
    std::uint64_t n_run = 0;
    std::uint64_t n_discarded = 0;

    while (n_run < cfg.num_tests) {
        if (n_discarded > discard_cap) {
            TestReport gave_up;
            gave_up.property_name = prop.name();
            gave_up.status = TestReport::Status::gave_up;
            gave_up.tests_run = n_run;
            gave_up.discarded = n_discarded;
            gave_up.seed = cfg.seed;
            return gave_up;
        }

        const auto [case_seed, next_chain] = chain.split();
        chain = next_chain;

        RandomSource source(case_seed);
        std::optional<T> value;
        try {
            value.emplace(prop.generator().produce(source, cfg.size.depth));
        } catch (const discard_signal&) {
            value.reset();
        }
        n_discarded += source.discards();
        if (!value) continue;

        const Verdict verdict = detail::evaluate_case(prop, *value);
        if (verdict.is_discard()) {
            ++n_discarded;
            continue;
        }
        ++n_run;
        if (verdict.is_pass()) continue;

        const auto [shrink_seed, unused] = case_seed.split();
        (void)unused;
        std::function<Verdict(const T&)> fold_verdict = [&prop](const T& v) {
            return detail::evaluate_case(prop, v);
        };
        std::function<std::string(const T&)> describe = [&prop](const T& v) {
            return prop.show(v);
        };
        ShrinkOutcome shrunk = minimize<T>(fold_verdict, prop.generator(), source.recorded(),
                                           cfg.max_shrink_budget, cfg.size, shrink_seed, describe);

        TestReport failed;
        failed.property_name = prop.name();
        failed.status = TestReport::Status::failed;
        failed.tests_run = n_run;
        failed.discarded = n_discarded;
        failed.counterexample = shrunk.minimal_value_description;
        failed.seed = case_seed;
        failed.replay_log = shrunk.minimal_log;
        failed.shrink = std::move(shrunk);
        return failed;
    }

    TestReport passed;
    passed.property_name = prop.name();
    passed.status = TestReport::Status::passed;
    passed.tests_run = n_run;
    passed.discarded = n_discarded;
    passed.seed = cfg.seed;
    return passed;
}

struct ReplayEvaluation {
    Verdict verdict = Verdict::pass();
    std::string rendered;
};

/// Type-erased handle to a property: run a full check, or re-evaluate one
/// recorded case. Suites and the CLI work in terms of these.
class SuiteEntry {
public:
    using RunFn = std::function<TestReport(const TestConfig&)>;
    using ReplayFn = std::function<ReplayEvaluation(const ChoiceLog&, SizeParams)>;

    SuiteEntry(std::string name, RunFn run, ReplayFn replay_fn)
        : name_(std::move(name)), run_(std::move(run)), replay_(std::move(replay_fn)) {}

    const std::string& name() const noexcept { return name_; }
    TestReport run(const TestConfig& cfg) const { return run_(cfg); }

    /// Replays a recorded log and evaluates the case; throws replay_underflow
    /// on a truncated log.
    ReplayEvaluation replay_case(const ChoiceLog& log, SizeParams size) const {
        return replay_(log, size);
    }

private:
    std::string name_;
    RunFn run_;
    ReplayFn replay_;
};

template <typename T>
SuiteEntry erase_property(Property<T> prop) {
    const std::string name = prop.name();
    auto shared = std::make_shared<const Property<T>>(std::move(prop));
    return SuiteEntry(
        name, [shared](const TestConfig& cfg) { return check(*shared, cfg); },
        [shared](const ChoiceLog& log, SizeParams size) {
            GeneratedValue<T> r = replay(shared->generator(), log, size);
            return ReplayEvaluation{detail::evaluate_case(*shared, r.value),
                                    shared->show(r.value)};
        });
}

/// Independent check per entry, seeds split-chained from cfg.seed; reports
/// come back in input order. With `parallel`, entries run concurrently but
/// results are identical to the sequential run (checks are pure).
std::vector<TestReport> run_suite(const std::vector<SuiteEntry>& entries, const TestConfig& cfg,
                                  bool parallel = false);

template <typename T>
std::vector<TestReport> run_suite(const std::vector<Property<T>>& props, const TestConfig& cfg,
                                  bool parallel = false) {
    std::vector<SuiteEntry> entries;
    entries.reserve(props.size());
    for (const Property<T>& p : props) entries.push_back(erase_property(p));
    return run_suite(entries, cfg, parallel);
}

} // namespace mtest
