// Seeded PRNG with derivable per-trial streams.
//
// Monte Carlo runs must be reproducible bit-for-bit across thread counts, so
// every trial draws from its own stream derived from (master seed, stream id)
// instead of sharing one generator. Distributions are hand-rolled on top of
// the raw 64-bit output; std::uniform_real_distribution and friends are not
// bit-portable across standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lab {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

    uint64_t seed() const { return seed_; }

    // Independent stream keyed by (base seed, stream id). Derivation uses the
    // construction seed, not the evolving state, so call order is irrelevant.
    Rng derive(uint64_t stream) const {
        return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL)));
    }

    uint64_t next_u64() { return gen_(); }

    // k uniform bits, 0 <= k <= 64
    uint64_t bits(int k) {
        if (k == 0) return 0;
        return next_u64() >> (64 - k);
    }

    int bit() { return static_cast<int>(next_u64() >> 63); }

    // Uniform in [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; caches the second variate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    uint64_t seed_;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace lab
