#pragma once

#include <cstdint>
#include <random>

namespace jalign {

// splitmix64 finalizer; used as a seed mixer for deriving child streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Child-stream derivation: for a fixed master seed, distinct stream ids map to
// distinct seeds (splitmix64 is a bijection). Every place in the codebase that
// needs an independent stream derives it through this function, so results are
// reproducible regardless of evaluation order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream));
}

// Single-stream generator with constant-time seeding; the workhorse for
// short-lived child streams (e.g. one per edge index), where mt19937_64's
// 312-word init would dominate the cost.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Seedable generator with fully specified sampling helpers. mt19937_64 output
// is pinned by the standard, and the helpers below avoid std::*_distribution,
// whose algorithms are implementation-defined; draws are therefore identical
// across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, bound); bound > 0.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t min = (0 - bound) % bound;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r < min);
        return r % bound;
    }

    // Double in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace jalign
