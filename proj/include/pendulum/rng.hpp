#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

namespace pendulum {

/// Deterministic uniform sampler for the property suites. The bit-to-double
/// mapping is explicit so reports are reproducible byte-for-byte.
class sampler {
public:
    explicit sampler(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    int uniform_int(int a, int b) { // inclusive bounds
        return a + static_cast<int>(eng_() % static_cast<std::uint64_t>(b - a + 1));
    }

    /// Seed from the PENDULUM_BSH_SEED environment variable when set.
    static std::uint64_t seed_from_env(std::uint64_t fallback = 0x5eedb0b5u) {
        if (const char* s = std::getenv("PENDULUM_BSH_SEED"))
            return std::strtoull(s, nullptr, 10);
        return fallback;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace pendulum
