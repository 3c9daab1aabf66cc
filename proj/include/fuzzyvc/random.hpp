#pragma once

// Seeded random streams. The standard <random> distributions are
// implementation-defined, so every draw here goes through the engine's raw
// 64-bit output with an explicit transform; results are identical on every
// conforming standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace fuzzyvc {

class Rng
{
    public:
        explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
            engine_.seed(seq);
        }

        std::uint64_t next() { return engine_(); }

        /** Uniform integer in [0, bound); bound > 0. Rejection sampling, no modulo bias. */
        std::uint64_t below(std::uint64_t bound)
        {
            const std::uint64_t limit = bound * (UINT64_MAX / bound);
            std::uint64_t x;
            do
                x = engine_();
            while (x >= limit);
            return x % bound;
        }

        /** Uniform double in [0, 1) with 53 random bits. */
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        /** Standard normal via the Box-Muller transform; one spare value is cached. */
        double normal()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            double u1;
            do
                u1 = uniform();
            while (u1 <= 0.0);
            const double u2 = uniform();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            spare_ = radius * std::sin(angle);
            has_spare_ = true;
            return radius * std::cos(angle);
        }

        /** Rademacher sign, +1 or -1 with equal probability. */
        int sign() { return (engine_() >> 63) ? 1 : -1; }

    private:
        std::mt19937_64 engine_;
        double spare_ = 0.0;
        bool has_spare_ = false;
};

}   // namespace fuzzyvc
