#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mtest/choice.hpp"
#include "mtest/seed.hpp"

namespace mtest {

/// Size knobs for generation: `depth` bounds recursion, `magnitude` scales
/// scalar ranges and container lengths.
struct SizeParams {
    std::uint32_t depth = 5;
    std::uint32_t magnitude = 10;
    friend bool operator==(const SizeParams&, const SizeParams&) = default;
};

/// A depth-bounded recipe turning a choice source into a value.
///
/// produce() is pure: the same choice sequence and depth budget always yield
/// the same value, and every bit of randomness flows through the source, so
/// any produced value can be replayed and shrunk via its recorded log.
template <typename T>
class Generator {
public:
    using value_type = T;
    using ProduceFn = std::function<T(ChoiceSource&, std::uint32_t)>;

    Generator() = default;

    Generator(std::string description, ProduceFn produce)
        : impl_(std::make_shared<const Impl>(Impl{std::move(description), std::move(produce)})) {}

    T produce(ChoiceSource& source, std::uint32_t depth) const {
        if (!impl_) throw contract_error("Generator: empty generator");
        return impl_->produce(source, depth);
    }

    const std::string& description() const {
        static const std::string empty;
        return impl_ ? impl_->description : empty;
    }

    /// Identity of the underlying recipe; copies of one generator share it.
    bool same_instance(const Generator& other) const noexcept { return impl_ == other.impl_; }

private:
    struct Impl {
        std::string description;
        ProduceFn produce;
    };
    std::shared_ptr<const Impl> impl_;
};

template <typename T>
struct GeneratedValue {
    T value;
    ChoiceLog log;
    std::uint64_t discards = 0;
};

/// Runs a generator against a fresh deterministic stream.
/// May throw discard_signal if a filter inside the generator gives up.
template <typename T>
GeneratedValue<T> generate(const Generator<T>& gen, Seed seed, SizeParams size) {
    RandomSource source(seed);
    T value = gen.produce(source, size.depth);
    return GeneratedValue<T>{std::move(value), source.recorded(), source.discards()};
}

/// Re-runs a generator against a recorded log. The returned log is the
/// effective consumed prefix (with bounds as requested on this run).
/// Throws replay_underflow if the log is too short.
template <typename T>
GeneratedValue<T> replay(const Generator<T>& gen, const ChoiceLog& log, SizeParams size) {
    ReplaySource source(log);
    T value = gen.produce(source, size.depth);
    return GeneratedValue<T>{std::move(value), source.recorded(), source.discards()};
}

template <typename T>
Generator<std::decay_t<T>> constant(T value) {
    using V = std::decay_t<T>;
    return Generator<V>("constant", [v = std::move(value)](ChoiceSource&, std::uint32_t) { return v; });
}

/// Uniform integer in [lo, hi]. The recorded choice is the offset from lo,
/// so shrinking moves values toward lo.
inline Generator<std::int64_t> int_in_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw contract_error("int_in_range: lo must not exceed hi");
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::string desc = "int_in_range(" + std::to_string(lo) + "," + std::to_string(hi) + ")";
    return Generator<std::int64_t>(desc, [lo, span](ChoiceSource& src, std::uint32_t) {
        std::uint64_t offset;
        if (span == 0) {
            // Full 64-bit range: compose two 32-bit draws.
            offset = (src.draw(1ull << 32) << 32) | src.draw(1ull << 32);
        } else {
            offset = src.draw(span);
        }
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
    });
}

/// Picks entry i with probability weight_i / sum(weights).
template <typename T>
Generator<T> frequency(std::vector<std::pair<std::uint64_t, Generator<T>>> weighted) {
    if (weighted.empty()) throw contract_error("frequency: needs at least one entry");
    std::uint64_t total = 0;
    for (const auto& [weight, gen] : weighted) {
        if (weight == 0) throw contract_error("frequency: weights must be positive");
        total += weight;
    }
    auto entries = std::make_shared<const std::vector<std::pair<std::uint64_t, Generator<T>>>>(
        std::move(weighted));
    return Generator<T>("frequency", [entries, total](ChoiceSource& src, std::uint32_t depth) {
        std::uint64_t ticket = src.draw(total);
        for (const auto& [weight, gen] : *entries) {
            if (ticket < weight) return gen.produce(src, depth);
            ticket -= weight;
        }
        return entries->back().second.produce(src, depth); // unreachable
    });
}

/// List whose length is drawn uniformly from [0, params.magnitude].
template <typename T>
Generator<std::vector<T>> list_of(Generator<T> element, SizeParams params) {
    const std::uint64_t max_len = params.magnitude;
    return Generator<std::vector<T>>(
        "list_of(" + element.description() + ")",
        [element, max_len](ChoiceSource& src, std::uint32_t depth) {
            const std::uint64_t len = src.draw(max_len + 1);
            std::vector<T> out;
            out.reserve(len);
            for (std::uint64_t i = 0; i < len; ++i) out.push_back(element.produce(src, depth));
            return out;
        });
}

template <typename T, typename F>
auto map(Generator<T> gen, F f) -> Generator<std::decay_t<std::invoke_result_t<F, T>>> {
    using U = std::decay_t<std::invoke_result_t<F, T>>;
    return Generator<U>("map(" + gen.description() + ")",
                        [gen, f = std::move(f)](ChoiceSource& src, std::uint32_t depth) {
                            return f(gen.produce(src, depth));
                        });
}

template <typename T, typename K>
auto bind(Generator<T> gen, K k) -> std::invoke_result_t<K, T> {
    using GU = std::invoke_result_t<K, T>;
    return GU("bind(" + gen.description() + ")",
              [gen, k = std::move(k)](ChoiceSource& src, std::uint32_t depth) {
                  return k(gen.produce(src, depth)).produce(src, depth);
              });
}

/// Retries until `valid` holds. Rejected attempts are rolled back from the
/// log and counted as discards on the source; exhausting max_retries throws
/// discard_signal, which the checker counts as a discarded case.
template <typename T, typename P>
Generator<T> such_that(Generator<T> gen, P valid, std::uint32_t max_retries = 100) {
    if (max_retries == 0) throw contract_error("such_that: max_retries must be positive");
    return Generator<T>("such_that(" + gen.description() + ")",
                        [gen, valid = std::move(valid), max_retries](ChoiceSource& src,
                                                                     std::uint32_t depth) {
                            for (std::uint32_t attempt = 0; attempt < max_retries; ++attempt) {
                                const std::size_t checkpoint = src.mark();
                                T value = gen.produce(src, depth);
                                if (valid(value)) return value;
                                src.rollback(checkpoint);
                                src.note_discard();
                            }
                            throw discard_signal("such_that: no valid value in " +
                                                 std::to_string(max_retries) + " attempts");
                        });
}

/// Depth-bounded recursion: at budget 0 the base generator is forced; each
/// level built by `step` runs its recursive positions with budget - 1. The
/// effective budget is capped at params.depth.
template <typename T>
Generator<T> recursive(Generator<T> base, std::function<Generator<T>(Generator<T>)> step,
                       SizeParams params) {
    struct State {
        Generator<T> base;
        Generator<T> level;
    };
    auto state = std::make_shared<State>(State{base, Generator<T>{}});
    State* raw = state.get();
    Generator<T> self("recursive-self", [raw](ChoiceSource& src, std::uint32_t depth) {
        if (depth == 0) return raw->base.produce(src, 0);
        return raw->level.produce(src, depth - 1);
    });
    state->level = step(self);
    const std::uint32_t cap = params.depth;
    return Generator<T>("recursive(" + base.description() + ")",
                        [state, cap](ChoiceSource& src, std::uint32_t depth) {
                            const std::uint32_t budget = std::min(depth, cap);
                            if (budget == 0) return state->base.produce(src, 0);
                            return state->level.produce(src, budget - 1);
                        });
}

} // namespace mtest
