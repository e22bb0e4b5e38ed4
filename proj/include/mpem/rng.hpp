// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace mpem
{

    // Deterministic splittable random streams. Every consumer derives its own
    // stream from (seed, purpose, index), so adding or removing one consumer
    // never shifts the draws seen by another, and parallel evaluation orders
    // cannot change results. Gaussian variates come from an explicit
    // Box-Muller transform rather than std::normal_distribution, whose
    // output sequence is implementation defined.
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0)
        {
            std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ seed;
            for (const char ch : purpose)
                h = mix(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(ch)));
            h = mix(h ^ index);
            // splitmix64 warm-up gives well-separated internal states even
            // for adjacent seeds
            state_ = mix(h + 0xbf58476d1ce4e5b9ULL);
        }

        std::uint64_t next_u64()
        {
            // splitmix64 step
            std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        // Uniform in [0, 1) with 53 random bits.
        double next_uniform()
        {
            return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        }

        // Standard normal pair via Box-Muller.
        std::pair<double, double> next_normal_pair()
        {
            double u1 = next_uniform();
            // Guard the log; (0,1] keeps the transform finite.
            u1 = 1.0 - u1;
            const double u2 = next_uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double a = 2.0 * std::numbers::pi * u2;
            return {r * std::cos(a), r * std::sin(a)};
        }

        // Circular complex Gaussian with E|z|^2 = 1.
        std::complex<double> next_complex_normal()
        {
            const auto [re, im] = next_normal_pair();
            return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
        }

        // Uniform on the complex disk of the given radius.
        std::complex<double> next_complex_in_disk(double radius)
        {
            const double r = radius * std::sqrt(next_uniform());
            const double a = 2.0 * std::numbers::pi * next_uniform();
            return {r * std::cos(a), r * std::sin(a)};
        }

    private:
        static std::uint64_t mix(std::uint64_t z)
        {
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        std::uint64_t state_{0};
    };

} // namespace mpem
