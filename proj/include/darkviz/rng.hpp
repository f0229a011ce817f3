#pragma once

#include <cstdint>
#include <random>

namespace darkviz {

/// Seeded uniform sampler. Derives doubles from raw mt19937_64 output so
/// sequences are identical across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0,1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo,hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform index in [0,n). n must be positive.
    std::size_t index(std::size_t n) {
        auto i = static_cast<std::size_t>(unit() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace darkviz
