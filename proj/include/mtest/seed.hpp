#pragma once

#include <cstdint>
#include <utility>

namespace mtest {

/// 64-bit finalizer with full avalanche (splitmix64's mixing function).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic splittable entropy value.
///
/// A Seed is an immutable 64-bit state. split() always yields the same pair
/// for the same seed, the two halves are distinct for every seed (mix64 is a
/// bijection applied to two distinct inputs), and the streams they drive are
/// independent at test scale.
class Seed {
public:
    constexpr explicit Seed(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t state() const noexcept { return state_; }

    constexpr std::pair<Seed, Seed> split() const noexcept {
        // Distinct pi-digit constants keep the children off the parent
        // stream's additive orbit.
        return {Seed(mix64(state_ ^ 0x243f6a8885a308d3ull)),
                Seed(mix64(state_ ^ 0x452821e638d01377ull))};
    }

    friend constexpr bool operator==(Seed a, Seed b) noexcept { return a.state_ == b.state_; }
    friend constexpr bool operator!=(Seed a, Seed b) noexcept { return !(a == b); }

private:
    std::uint64_t state_;
};

constexpr std::pair<Seed, Seed> split(Seed seed) noexcept { return seed.split(); }

/// Uniform 64-bit stream seeded by a Seed (splitmix64).
class SplitMix {
public:
    constexpr explicit SplitMix(Seed seed) noexcept : state_(seed.state()) {}

    constexpr std::uint64_t next() noexcept {
        return mix64(state_ += 0x9e3779b97f4a7c15ull);
    }

    /// Uniform value in [0, bound). bound must be >= 1. Unbiased via
    /// threshold rejection.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace mtest
