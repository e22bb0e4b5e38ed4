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
#include <numbers>
#include <stdexcept>

namespace mpem
{

    inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
    inline constexpr double kFreeSpaceImpedance = 376.730313668; // Ohm

    // Radiation resistance of a thin half-wave dipole truncated to its three
    // strongest (degree-1, electric-type) spherical-harmonic terms, at unit
    // terminal current. This single value anchors the amplitude of every
    // reference coefficient vector in the toolkit.
    inline constexpr double kDipoleRadiationResistance = 72.9016; // Ohm

    // Frequency-derived quantities shared by pattern evaluation and power
    // accounting. k is always 2*pi*frequency/c; construct through
    // from_frequency so the pair cannot drift apart.
    template <typename Scalar>
    struct PhysicalConstants
    {
        Scalar eta0;              // free-space impedance, Ohm
        Scalar k;                 // wavenumber, rad/m
        Scalar frequency;         // Hz
        Scalar terminal_current;  // |I| at the antenna terminals, A

        static PhysicalConstants from_frequency(Scalar frequency_hz, Scalar current_a = Scalar(1))
        {
            if (!(frequency_hz > Scalar(0)))
                throw std::invalid_argument("PhysicalConstants: frequency must be positive");
            if (!(current_a > Scalar(0)))
                throw std::invalid_argument("PhysicalConstants: terminal current must be positive");
            PhysicalConstants c;
            c.eta0 = Scalar(kFreeSpaceImpedance);
            c.k = Scalar(2) * std::numbers::pi_v<Scalar> * frequency_hz / Scalar(kSpeedOfLight);
            c.frequency = frequency_hz;
            c.terminal_current = current_a;
            return c;
        }
    };

    using PhysicalConstantsD = PhysicalConstants<double>;

} // namespace mpem
