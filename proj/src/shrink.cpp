#include "mtest/shrink.hpp"

namespace mtest {

std::vector<ChoiceLog> shrink_candidates(const ChoiceLog& log, SplitMix& rng) {
    std::vector<ChoiceLog> out;
    const std::size_t n = log.size();
    if (n == 0) return out;

    // (a) delete contiguous blocks, halving sizes. Never deletes the whole
    // log: a failing value needs at least the choices that produced it.
    // Each deletion is also retried with the preceding choice decremented by
    // the block length, which unsticks length-prefixed collections.
    for (std::size_t len = n / 2; len >= 1; len /= 2) {
        for (std::size_t start = 0; start + len <= n; ++start) {
            ChoiceLog deleted = log.without_block(start, len);
            if (start >= 1 && log[start - 1].value >= len) {
                out.push_back(
                    deleted.with_value(start - 1, log[start - 1].value - len));
            }
            out.push_back(std::move(deleted));
        }
    }

    // (b) zero out single choices.
    for (std::size_t i = 0; i < n; ++i) {
        if (log[i].value > 0) out.push_back(log.with_value(i, 0));
    }

    // (c) reduce single choices: halve, a random value below, minus one.
    // Zero is pass (b)'s job, so only targets >= 2 produce anything here.
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t v = log[i].value;
        if (v < 2) continue;
        const std::uint64_t probes[3] = {v / 2, 1 + rng.below(v - 1), v - 1};
        std::uint64_t emitted[3];
        std::size_t count = 0;
        for (std::uint64_t probe : probes) {
            if (probe == 0 || probe >= v) continue;
            bool seen = false;
            for (std::size_t j = 0; j < count; ++j) seen = seen || emitted[j] == probe;
            if (seen) continue;
            emitted[count++] = probe;
            out.push_back(log.with_value(i, probe));
        }
    }

    return out;
}

std::int64_t boundary_descend(const std::function<bool(std::int64_t)>& pred, std::int64_t failing,
                              std::int64_t floor, std::uint32_t retries_per_level, Seed seed) {
    if (retries_per_level == 0)
        throw contract_error("boundary_descend: retries_per_level must be positive");
    if (floor > failing) throw contract_error("boundary_descend: floor must not exceed failing");
    if (pred(failing))
        throw contract_error("boundary_descend: the starting value must violate the property");

    SplitMix rng(seed);
    std::int64_t current = failing;
    while (current > floor) {
        const std::uint64_t span =
            static_cast<std::uint64_t>(current) - static_cast<std::uint64_t>(floor);
        bool moved = false;
        for (std::uint32_t i = 0; i < retries_per_level; ++i) {
            const std::int64_t probe =
                static_cast<std::int64_t>(static_cast<std::uint64_t>(floor) + rng.below(span));
            if (!pred(probe)) {
                current = probe;
                moved = true;
                break;
            }
        }
        if (!moved) {
            if (!pred(current - 1)) {
                --current;
            } else {
                break;
            }
        }
    }
    return current;
}

} // namespace mtest
