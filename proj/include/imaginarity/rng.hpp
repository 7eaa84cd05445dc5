#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace imaginarity {

// Deterministic random stream. The engine is the standardized mt19937_64,
// and every variate is derived from raw 64-bit draws rather than from
// std:: distributions, so a seed reproduces the same sequence on every
// platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; the paired variate is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // 1 - u lies in (0, 1], keeping the logarithm finite.
        const double u = 1.0 - uniform01();
        const double v = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 6.283185307179586476925286766559 * v;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace imaginarity
