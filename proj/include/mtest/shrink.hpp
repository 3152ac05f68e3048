#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mtest/choice.hpp"
#include "mtest/generator.hpp"
#include "mtest/seed.hpp"
#include "mtest/verdict.hpp"

namespace mtest {

/// Result of minimizing a failing choice log.
struct ShrinkOutcome {
    ChoiceLog minimal_log;
    std::string minimal_value_description;
    std::uint64_t steps_taken = 0;
    std::uint64_t candidates_tried = 0;
};

/// One round of reduction candidates for `log`, in schedule order:
///   (a) contiguous block deletions with halving block sizes, each also
///       tried with the preceding choice decremented by the block length
///       (count fix-up for length-prefixed collections),
///   (b) single choices set to zero,
///   (c) single choices reduced (halved, a random value below, minus one).
/// Every candidate is strictly smaller than `log` under size_lex_order.
/// An empty log yields an empty stream.
std::vector<ChoiceLog> shrink_candidates(const ChoiceLog& log, SplitMix& rng);

namespace detail {

template <typename T>
struct ReplayAttempt {
    bool ok = false;
    T value{};
    ChoiceLog effective;
};

template <typename T>
ReplayAttempt<T> try_replay(const Generator<T>& gen, const ChoiceLog& log, SizeParams size) {
    try {
        GeneratedValue<T> r = replay(gen, log, size);
        return ReplayAttempt<T>{true, std::move(r.value), std::move(r.log)};
    } catch (const replay_underflow&) {
        return ReplayAttempt<T>{};
    } catch (const discard_signal&) {
        return ReplayAttempt<T>{};
    }
}

} // namespace detail

/// Greedy first-success descent over shrink_candidates.
///
/// `verdict` folds the validity precondition and the property check into one
/// call: Discard marks an invalid value (skipped, never accepted), Fail marks
/// a reproducing counterexample. On the first candidate that replays to a
/// valid failing value the search restarts from that candidate's effective
/// log; it stops at a local minimum or when `budget` candidate evaluations
/// are spent. The failing log must replay to a valid failing value.
template <typename T>
ShrinkOutcome minimize(const std::function<Verdict(const T&)>& verdict, const Generator<T>& gen,
                       const ChoiceLog& failing, std::uint64_t budget, SizeParams size,
                       Seed shrink_seed = Seed(0),
                       const std::function<std::string(const T&)>& describe = nullptr) {
    if (budget < 1) throw contract_error("minimize: budget must be positive");

    auto entry = detail::try_replay(gen, failing, size);
    if (!entry.ok || !verdict(entry.value).is_fail())
        throw contract_error("minimize: the starting log must replay to a valid failing value");

    SplitMix rng(shrink_seed);
    ChoiceLog current = entry.effective;
    T current_value = std::move(entry.value);
    std::uint64_t steps = 0;
    std::uint64_t tried = 0;

    bool progressed = true;
    while (progressed && tried < budget) {
        progressed = false;
        for (ChoiceLog& candidate : shrink_candidates(current, rng)) {
            if (tried >= budget) break;
            ++tried;
            auto attempt = detail::try_replay(gen, candidate, size);
            if (!attempt.ok) continue;
            if (!verdict(attempt.value).is_fail()) continue;
            current = std::move(attempt.effective);
            current_value = std::move(attempt.value);
            ++steps;
            progressed = true;
            break;
        }
    }

    std::string rendered = describe ? describe(current_value) : std::string{};
    return ShrinkOutcome{std::move(current), std::move(rendered), steps, tried};
}

/// Random descent toward the smallest failing integer, after the boundary
/// search described by the x < 77 walkthrough: draw up to retries_per_level
/// values in [floor, current); on a failing draw restart from it; when a
/// level yields none, probe current - 1 directly before giving up.
/// `pred` is the property; pred(failing) must be false.
std::int64_t boundary_descend(const std::function<bool(std::int64_t)>& pred, std::int64_t failing,
                              std::int64_t floor, std::uint32_t retries_per_level = 16,
                              Seed seed = Seed(0));

} // namespace mtest
