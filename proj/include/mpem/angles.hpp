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

    // Direction on the sphere. theta is the polar angle in [0, pi], phi the
    // azimuth normalized to (-pi, pi]. All angles are radians internally;
    // degrees appear only at file and CLI boundaries.
    template <typename Scalar>
    struct SphericalAngle
    {
        Scalar theta{0};
        Scalar phi{0};

        SphericalAngle() = default;

        SphericalAngle(Scalar theta_rad, Scalar phi_rad)
            : theta(theta_rad), phi(normalize_phi(phi_rad))
        {
            const Scalar pi = std::numbers::pi_v<Scalar>;
            const Scalar slack = Scalar(16) * std::numeric_limits<Scalar>::epsilon();
            if (!(theta >= -slack && theta <= pi + slack) || !std::isfinite(phi))
                throw std::invalid_argument("SphericalAngle: theta must lie in [0, pi]");
            if (theta < Scalar(0))
                theta = Scalar(0);
            if (theta > pi)
                theta = pi;
        }

        static SphericalAngle from_degrees(Scalar theta_deg, Scalar phi_deg)
        {
            const Scalar d2r = std::numbers::pi_v<Scalar> / Scalar(180);
            return SphericalAngle(theta_deg * d2r, phi_deg * d2r);
        }

        Scalar theta_degrees() const { return theta * Scalar(180) / std::numbers::pi_v<Scalar>; }
        Scalar phi_degrees() const { return phi * Scalar(180) / std::numbers::pi_v<Scalar>; }

        // Maps any finite angle into (-pi, pi].
        static Scalar normalize_phi(Scalar phi_rad)
        {
            const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
            Scalar r = std::remainder(phi_rad, two_pi);
            if (r <= -std::numbers::pi_v<Scalar>)
                r += two_pi;
            return r;
        }
    };

    using SphericalAngleD = SphericalAngle<double>;

} // namespace mpem
