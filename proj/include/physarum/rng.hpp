#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace physarum {

// Deterministic random source used everywhere in the simulator.
//
// Reproducibility across platforms and standard libraries is a hard
// requirement, so this is a self-contained implementation of xoshiro256**
// (Blackman & Vigna, public domain) seeded by splitmix64, with explicit
// integer/real conversions. None of the <random> distribution templates are
// used anywhere: their output sequences are implementation-defined, ours is
// pinned down below.
//
// State transition (xoshiro256** 1.0), all arithmetic on uint64_t:
//   result = rotl(s1 * 5, 7) * 9
//   t  = s1 << 17
//   s2 ^= s0;  s3 ^= s1;  s1 ^= s2;  s0 ^= s3;  s2 ^= t;  s3 = rotl(s3, 45)
//
// Seeding: the four state words are the first four outputs of splitmix64
// applied to the user seed (guaranteed nonzero state for every seed).
//
// Conversions:
//   next_double()   = (next_u64() >> 11) * 2^-53, uniform in [0, 1)
//   bounded(n)      = unbiased uniform in [0, n) by rejection sampling
//   shuffle(v)      = Fisher-Yates, descending: swap(v[i-1], v[bounded(i)])
//                     for i = size .. 2
//   gaussian_pair() = Box-Muller from two next_double() draws
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5u, 7) * 9u;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased. pre: n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0u - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform heading in degrees, [0, 360).
    double heading_deg() { return 360.0 * next_double(); }

    // Two independent standard normal deviates (Box-Muller). Consumes
    // exactly two uniform draws (the first is re-drawn in the measure-zero
    // case u1 == 0).
    std::pair<double, double> gaussian_pair();

    // In-place Fisher-Yates shuffle; consumes size-1 bounded draws.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[bounded(i)]);
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15u;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9u;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBu;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

}  // namespace physarum
