#pragma once

// Seeded random streams. The mapping from (seed, stream index) to output is
// part of the reproducibility contract and must not change:
//
//   state  = splitmix64(seed) ^ splitmix64(splitmix64(index + 1))
//   engine = std::mt19937_64(state)
//
// Derived draws use only raw 64-bit outputs of the engine (no standard
// library distributions, whose algorithms vary between implementations):
//   uniform()   = (next() >> 11) * 2^-53
//   below(k)    = rejection sampling on next() against the largest multiple of k

#include <cstdint>
#include <random>

namespace specnorm {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(seed) ^ splitmix64(splitmix64(stream + 1))) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, k), k >= 1.
    std::uint64_t below(std::uint64_t k) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % k);
        for (;;) {
            const std::uint64_t v = next();
            if (v < limit) return v % k;
        }
    }

    /// Uniform integer in [lo, hi].
    int between(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace specnorm
