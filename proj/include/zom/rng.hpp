#pragma once

#include <cstdint>
#include <random>

namespace zom {

// mt19937_64 with hand-rolled value mapping so that streams are identical
// across standard libraries (std::uniform_int_distribution is not
// portable between implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound), bound >= 1. Rejection-free modulo is
    // fine here: bound is tiny compared to 2^64, bias is unobservable.
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

    int range(int lo, int hi) {  // inclusive
        return lo + (int)below((std::uint64_t)(hi - lo + 1));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return (double)(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace zom
