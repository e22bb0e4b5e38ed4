// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

// Independent numerical oracles used by the test suites. Nothing here may
// call into the code paths it checks: power comes from raw quadrature,
// basis coefficients from brute-force projection, least-squares minima from
// grid refinement on the residual itself.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mpem/angles.hpp"
#include "mpem/rng.hpp"
#include "mpem/types.hpp"
#include "mpem/vsh.hpp"

namespace mpem::oracle
{

    using FieldFn = std::function<std::pair<cplx_t, cplx_t>(double theta, double phi)>;

    // Sphere integral of |E|^2/(2 eta0): composite Simpson over theta,
    // periodic rectangle rule over phi. Grid defaults to the 360 x 181
    // layout used by the normalization acceptance check.
    inline double quadrature_power(const FieldFn& field, double eta0,
                                   int n_phi = 360, int n_theta = 181)
    {
        const double pi = std::numbers::pi;
        const double dphi = 2.0 * pi / n_phi;
        const double dtheta = pi / (n_theta - 1);
        double acc = 0.0;
        for (int it = 0; it < n_theta; ++it)
        {
            const double theta = it * dtheta;
            // Simpson weights 1,4,2,...,4,1 over an even interval count
            double wt = (it == 0 || it == n_theta - 1) ? 1.0 : (it % 2 == 1 ? 4.0 : 2.0);
            wt *= dtheta / 3.0;
            double ring = 0.0;
            for (int ip = 0; ip < n_phi; ++ip)
            {
                const double phi = -pi + ip * dphi;
                const auto [et, ep] = field(theta, phi);
                ring += std::norm(et) + std::norm(ep);
            }
            acc += wt * std::sin(theta) * ring * dphi;
        }
        return acc / (2.0 * eta0);
    }

    // Brute-force projection of an arbitrary tangential pattern onto the
    // degree-1 TM basis: c_m = k * <B_m, F> with the inner product taken by
    // dense quadrature (Simpson in theta, rectangle in phi). Independent of
    // every closed-form coefficient expression in the library.
    inline ComplexVector3<double> project_onto_l1_basis(const FieldFn& field, double k,
                                                        int n_phi = 256, int n_theta = 1025)
    {
        const double pi = std::numbers::pi;
        const double dphi = 2.0 * pi / n_phi;
        const double dtheta = pi / (n_theta - 1);
        ComplexVector3<double> acc = ComplexVector3<double>::Zero();
        for (int it = 0; it < n_theta; ++it)
        {
            const double theta = it * dtheta;
            double wt = (it == 0 || it == n_theta - 1) ? 1.0 : (it % 2 == 1 ? 4.0 : 2.0);
            wt *= dtheta / 3.0;
            for (int ip = 0; ip < n_phi; ++ip)
            {
                const double phi = -pi + ip * dphi;
                const auto [et, ep] = field(theta, phi);
                const auto b = vsh_basis_l1_tm<double>(SphericalAngleD(theta, phi));
                for (int m = 0; m < 3; ++m)
                    acc(m) += wt * dphi * std::sin(theta) *
                              (std::conj(b(0, m)) * et + std::conj(b(1, m)) * ep);
            }
        }
        return acc * k;
    }

    // Tangential projection of a unit vector u at direction (theta, phi):
    // the exact shape of an ideal dipole pattern oriented along u, scaled by
    // `amplitude`. Used as the physically-rotated ground truth.
    inline FieldFn tilted_dipole_pattern(const Eigen::Vector3d& u_xyz, double amplitude)
    {
        return [u_xyz, amplitude](double theta, double phi) -> std::pair<cplx_t, cplx_t> {
            const Eigen::Vector3d theta_hat(std::cos(theta) * std::cos(phi),
                                            std::cos(theta) * std::sin(phi),
                                            -std::sin(theta));
            const Eigen::Vector3d phi_hat(-std::sin(phi), std::cos(phi), 0.0);
            return {cplx_t(amplitude * u_xyz.dot(theta_hat), 0.0),
                    cplx_t(amplitude * u_xyz.dot(phi_hat), 0.0)};
        };
    }

    // Brute-force minimizer of ||V w - v||^2 over real w by repeated grid
    // refinement. Evaluates the complex residual directly; never touches
    // normal equations.
    inline Eigen::Vector3d grid_refine_lse(const ComplexMatrixX<double>& v_r,
                                           const ComplexVectorX<double>& v,
                                           double half_width = 3.0, int rounds = 18)
    {
        const auto residual = [&](const Eigen::Vector3d& w) {
            return (v_r * w.cast<cplx_t>() - v).squaredNorm();
        };
        Eigen::Vector3d center = Eigen::Vector3d::Zero();
        double h = half_width;
        constexpr int kPerSide = 10; // 21 points per axis
        for (int round = 0; round < rounds; ++round)
        {
            Eigen::Vector3d best = center;
            double best_val = residual(center);
            for (int i = -kPerSide; i <= kPerSide; ++i)
                for (int j = -kPerSide; j <= kPerSide; ++j)
                    for (int l = -kPerSide; l <= kPerSide; ++l)
                    {
                        const Eigen::Vector3d w = center + (h / kPerSide) * Eigen::Vector3d(i, j, l);
                        const double val = residual(w);
                        if (val < best_val)
                        {
                            best_val = val;
                            best = w;
                        }
                    }
            center = best;
            h = 2.5 * h / kPerSide; // keep the previous best interior to the next box
        }
        return center;
    }

    // Deterministic random unitary via QR of a complex Gaussian matrix.
    inline ComplexMatrixX<double> random_unitary(Eigen::Index n, std::uint64_t seed)
    {
        RandomStream rng(seed, "oracle/unitary");
        ComplexMatrixX<double> g(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                g(i, j) = rng.next_complex_normal();
        Eigen::HouseholderQR<ComplexMatrixX<double>> qr(g);
        ComplexMatrixX<double> q = qr.householderQ();
        return q;
    }

    // Deterministic random complex matrix with unit-variance entries.
    inline ComplexMatrixX<double> random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                                        std::uint64_t seed)
    {
        RandomStream rng(seed, "oracle/matrix");
        ComplexMatrixX<double> m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = rng.next_complex_normal();
        return m;
    }

    // Uniform point on the unit sphere in R^3.
    inline Eigen::Vector3d random_unit_vector(RandomStream& rng)
    {
        const auto [a, b] = rng.next_normal_pair();
        const auto [c, d] = rng.next_normal_pair();
        (void)d;
        Eigen::Vector3d v(a, b, c);
        const double n = v.norm();
        return n > 0 ? Eigen::Vector3d(v / n) : Eigen::Vector3d(1, 0, 0);
    }

} // namespace mpem::oracle
