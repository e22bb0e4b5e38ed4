// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mpem/errors.hpp"
#include "mpem/types.hpp"

// Weight estimation from sense-antenna voltages: crosstalk correction, the
// matrix-inversion / least-squares / norm-constrained least-squares
// estimators, the 1-entropy channel metric and sensor subset selection.
//
// Functions here operate on bare Eigen matrices; sensor labels and file
// bookkeeping live one layer up in the measurement model.

namespace mpem
{

    // Condition numbers above this are treated as singular rather than
    // silently regularized.
    inline constexpr double kDefaultConditionCeiling = 1e12;

    // Exhaustive subset enumeration refuses to run past this many
    // combinations unless the caller raises the budget.
    inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

    namespace detail
    {
        template <typename Derived>
        using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    }

    // Ratio of largest to smallest singular value. Rank-deficient matrices
    // map to +infinity; the zero matrix is rejected.
    template <typename Derived>
    detail::RealOf<Derived> condition_number(const Eigen::MatrixBase<Derived>& m)
    {
        using Real = detail::RealOf<Derived>;
        using Dense = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
        Eigen::JacobiSVD<Dense> svd(m.derived());
        const auto& sv = svd.singularValues();
        if (sv.size() == 0 || sv(0) == Real(0))
            throw NumericalError("condition_number: zero matrix");
        const Real smin = sv(sv.size() - 1);
        if (smin == Real(0))
            return std::numeric_limits<Real>::infinity();
        return sv(0) / smin;
    }

    // 1-entropy of a channel matrix: H1 = 0.5 * log2 det(V V^dagger), in
    // bits. Determinants that round to <= 0 (rank deficiency) return the
    // -infinity sentinel instead of throwing.
    template <typename Derived>
    detail::RealOf<Derived> one_entropy(const Eigen::MatrixBase<Derived>& v)
    {
        using Real = detail::RealOf<Derived>;
        using Cplx = std::complex<Real>;
        using Dense = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
        const Dense vd = v.derived().template cast<Cplx>();
        const Dense gram = vd * vd.adjoint();
        const Real det = gram.determinant().real();
        if (!(det > Real(0)) || !std::isfinite(det))
            return -std::numeric_limits<Real>::infinity();
        return Real(0.5) * std::log2(det);
    }

    // Recovers true voltages from measured ones: v = M^-1 * v_m. Refuses
    // crosstalk matrices whose condition number exceeds the ceiling.
    template <typename Scalar>
    ComplexVectorX<Scalar> correct_crosstalk(const ComplexMatrixX<Scalar>& crosstalk,
                                             const ComplexVectorX<Scalar>& measured,
                                             Scalar condition_ceiling = Scalar(kDefaultConditionCeiling))
    {
        if (crosstalk.rows() != crosstalk.cols())
            throw std::invalid_argument("correct_crosstalk: crosstalk matrix must be square");
        if (crosstalk.rows() != measured.size())
            throw std::invalid_argument("correct_crosstalk: dimension mismatch");
        const Scalar cond = condition_number(crosstalk);
        if (!(cond <= condition_ceiling))
        {
            std::ostringstream os;
            os << "correct_crosstalk: crosstalk matrix is singular or near-singular (cond = "
               << cond << ", ceiling = " << condition_ceiling << ")";
            throw NumericalError(os.str());
        }
        return crosstalk.partialPivLu().solve(measured);
    }

    template <typename Scalar>
    ComplexMatrixX<Scalar> correct_crosstalk(const ComplexMatrixX<Scalar>& crosstalk,
                                             const ComplexMatrixX<Scalar>& measured_columns,
                                             Scalar condition_ceiling = Scalar(kDefaultConditionCeiling))
    {
        if (crosstalk.rows() != crosstalk.cols())
            throw std::invalid_argument("correct_crosstalk: crosstalk matrix must be square");
        if (crosstalk.rows() != measured_columns.rows())
            throw std::invalid_argument("correct_crosstalk: dimension mismatch");
        const Scalar cond = condition_number(crosstalk);
        if (!(cond <= condition_ceiling))
        {
            std::ostringstream os;
            os << "correct_crosstalk: crosstalk matrix is singular or near-singular (cond = "
               << cond << ", ceiling = " << condition_ceiling << ")";
            throw NumericalError(os.str());
        }
        return crosstalk.partialPivLu().solve(measured_columns);
    }

    enum class SelectionStrategy
    {
        Exhaustive,
        Greedy
    };

    // Result of sensor subset selection. Indices are strictly increasing row
    // indices into the full calibration matrix.
    template <typename Scalar>
    struct SubsetSelection
    {
        std::vector<Eigen::Index> indices;
        Scalar h1{0};        // bits, of the selected row subset
        Scalar condition{0}; // condition number of the selected row subset
    };

    using SubsetSelectionD = SubsetSelection<double>;

    namespace detail
    {
        inline std::uint64_t binomial_or_max(Eigen::Index n, Eigen::Index k)
        {
            if (k < 0 || k > n)
                return 0;
            long double acc = 1.0L;
            for (Eigen::Index i = 1; i <= k; ++i)
            {
                acc *= static_cast<long double>(n - k + i);
                acc /= static_cast<long double>(i);
                if (acc > 1e18L)
                    return std::numeric_limits<std::uint64_t>::max();
            }
            return static_cast<std::uint64_t>(acc + 0.5L);
        }

        template <typename Scalar>
        ComplexMatrixX<Scalar> select_rows(const ComplexMatrixX<Scalar>& v,
                                           const std::vector<Eigen::Index>& rows)
        {
            ComplexMatrixX<Scalar> out(static_cast<Eigen::Index>(rows.size()), v.cols());
            for (std::size_t i = 0; i < rows.size(); ++i)
                out.row(static_cast<Eigen::Index>(i)) = v.row(rows[i]);
            return out;
        }
    } // namespace detail

    // Chooses k sensor rows of the calibration matrix maximizing the
    // 1-entropy. Exhaustive mode enumerates every combination (ties broken
    // by the lexicographically smallest index set); greedy mode adds one row
    // at a time by best determinant gain.
    template <typename Scalar>
    SubsetSelection<Scalar> select_subset(const ComplexMatrixX<Scalar>& v_full,
                                          Eigen::Index k,
                                          SelectionStrategy strategy = SelectionStrategy::Exhaustive,
                                          std::uint64_t budget = kDefaultEnumerationBudget)
    {
        const Eigen::Index n = v_full.rows();
        if (k < 1 || k > n)
            throw std::invalid_argument("select_subset: require 1 <= k <= n_sense");

        std::vector<Eigen::Index> best;
        Scalar best_h1 = -std::numeric_limits<Scalar>::infinity();

        if (strategy == SelectionStrategy::Exhaustive)
        {
            const std::uint64_t count = detail::binomial_or_max(n, k);
            if (count > budget)
            {
                std::ostringstream os;
                os << "select_subset: C(" << n << ", " << k << ") = " << count
                   << " exceeds the enumeration budget " << budget
                   << "; rerun with the greedy strategy or a larger budget";
                throw NumericalError(os.str());
            }
            std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
            std::iota(idx.begin(), idx.end(), Eigen::Index(0));
            bool more = true;
            while (more)
            {
                const Scalar h1 = one_entropy(detail::select_rows(v_full, idx));
                if (best.empty() || h1 > best_h1)
                {
                    best = idx;
                    best_h1 = h1;
                }
                // advance to the next combination in lexicographic order
                more = false;
                for (Eigen::Index pos = k - 1; pos >= 0; --pos)
                {
                    if (idx[static_cast<std::size_t>(pos)] < n - k + pos)
                    {
                        ++idx[static_cast<std::size_t>(pos)];
                        for (Eigen::Index p = pos + 1; p < k; ++p)
                            idx[static_cast<std::size_t>(p)] = idx[static_cast<std::size_t>(p - 1)] + 1;
                        more = true;
                        break;
                    }
                }
            }
        }
        else
        {
            std::vector<bool> taken(static_cast<std::size_t>(n), false);
            for (Eigen::Index step = 0; step < k; ++step)
            {
                Eigen::Index pick = -1;
                Scalar pick_h1 = -std::numeric_limits<Scalar>::infinity();
                for (Eigen::Index r = 0; r < n; ++r)
                {
                    if (taken[static_cast<std::size_t>(r)])
                        continue;
                    std::vector<Eigen::Index> trial = best;
                    trial.push_back(r);
                    std::sort(trial.begin(), trial.end());
                    const Scalar h1 = one_entropy(detail::select_rows(v_full, trial));
                    if (pick < 0 || h1 > pick_h1)
                    {
                        pick = r;
                        pick_h1 = h1;
                    }
                }
                taken[static_cast<std::size_t>(pick)] = true;
                best.push_back(pick);
                std::sort(best.begin(), best.end());
                best_h1 = pick_h1;
            }
        }

        SubsetSelection<Scalar> sel;
        sel.indices = best;
        sel.h1 = best_h1;
        sel.condition = condition_number(detail::select_rows(v_full, best));
        return sel;
    }

    // Matrix-inversion estimate on a square calibration system. The inverse
    // is complex valued under noise while physical weights are real, so the
    // real part is the estimate and the norm of the discarded imaginary part
    // is surfaced as a quality diagnostic.
    template <typename Scalar>
    struct MiEstimate
    {
        OrientationWeights<Scalar> weights;
        Scalar imag_norm{0};
    };

    template <typename Scalar>
    MiEstimate<Scalar> mi_estimate(const ComplexMatrixX<Scalar>& v_r,
                                   const ComplexVectorX<Scalar>& v,
                                   Scalar condition_ceiling = Scalar(kDefaultConditionCeiling))
    {
        if (v_r.rows() != v_r.cols())
            throw std::invalid_argument("mi_estimate: calibration matrix must be square");
        if (v_r.rows() != v.size() || v_r.cols() != 3)
            throw std::invalid_argument("mi_estimate: dimension mismatch");
        const Scalar cond = condition_number(v_r);
        if (!(cond <= condition_ceiling))
        {
            std::ostringstream os;
            os << "mi_estimate: calibration matrix is singular or near-singular (cond = " << cond
               << ", H1 = " << one_entropy(v_r) << " bits)";
            throw NumericalError(os.str());
        }
        const ComplexVectorX<Scalar> w_complex = v_r.partialPivLu().solve(v);
        MiEstimate<Scalar> est;
        est.weights = w_complex.real().template head<3>();
        est.imag_norm = w_complex.imag().norm();
        return est;
    }

    // Unconstrained least squares over real weights:
    // w = [Re(V^dagger V)]^-1 Re(V^dagger v). Real by construction.
    template <typename Scalar>
    OrientationWeights<Scalar> lse_estimate(const ComplexMatrixX<Scalar>& v_r,
                                            const ComplexVectorX<Scalar>& v,
                                            Scalar condition_ceiling = Scalar(kDefaultConditionCeiling))
    {
        if (v_r.rows() != v.size() || v_r.cols() != 3)
            throw std::invalid_argument("lse_estimate: dimension mismatch");
        const Eigen::Matrix<Scalar, 3, 3> b = (v_r.adjoint() * v_r).real();
        const Vector3<Scalar> c = (v_r.adjoint() * v).real();
        const Scalar cond = condition_number(b);
        if (!(cond <= condition_ceiling))
        {
            std::ostringstream os;
            os << "lse_estimate: normal matrix Re(V^H V) is singular (cond = " << cond << ")";
            throw NumericalError(os.str());
        }
        return b.ldlt().solve(c);
    }

    // Solution of the norm-constrained least squares step, together with the
    // Lagrange multiplier that enforced the unit sphere. ambiguous flags the
    // degenerate branch where the minimizer is not unique (data orthogonal
    // to the smallest eigenvector of the normal matrix).
    template <typename Scalar>
    struct ClseEstimate
    {
        OrientationWeights<Scalar> weights;
        Scalar lambda{0};
        bool ambiguous{false};
    };

    // Minimizes w^T B w - 2 c^T w over the unit sphere ||w|| = 1, B
    // symmetric PSD. Stationarity gives (B + lambda I) w = c with
    // lambda >= -eigmin(B); the multiplier is located by safeguarded
    // bisection on ||w(lambda)||^2 = 1 in the eigenbasis of B, with the
    // hard case (c orthogonal to the bottom eigenspace and interior
    // pseudoinverse solution) handled by padding along that eigenvector.
    template <typename Scalar>
    ClseEstimate<Scalar> solve_unit_sphere_ls(const Eigen::Matrix<Scalar, 3, 3>& b,
                                              const Vector3<Scalar>& c)
    {
        using Vec3 = Vector3<Scalar>;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 3, 3>> eig(b);
        if (eig.info() != Eigen::Success)
            throw NumericalError("solve_unit_sphere_ls: eigendecomposition failed");
        const Vec3 lam = eig.eigenvalues(); // ascending
        Eigen::Matrix<Scalar, 3, 3> q = eig.eigenvectors();

        // Deterministic eigenvector signs: largest-magnitude entry positive.
        for (int j = 0; j < 3; ++j)
        {
            Eigen::Index imax;
            q.col(j).cwiseAbs().maxCoeff(&imax);
            if (q(imax, j) < Scalar(0))
                q.col(j) = -q.col(j);
        }

        const Vec3 d = q.transpose() * c;
        const Scalar scale = std::max({std::abs(lam(0)), std::abs(lam(2)), d.norm(), Scalar(1)});
        const Scalar tiny = std::numeric_limits<Scalar>::epsilon() * scale;

        // ||w(lambda)||^2 - 1 for lambda strictly above -lam(0), where the
        // shifted matrix is positive definite.
        const auto norm2_minus_1 = [&](Scalar lambda) {
            Scalar s = Scalar(0);
            for (int i = 0; i < 3; ++i)
            {
                const Scalar den = lam(i) + lambda;
                s += (d(i) * d(i)) / (den * den);
            }
            return s - Scalar(1);
        };

        const auto weights_at = [&](Scalar lambda) {
            Vec3 y;
            for (int i = 0; i < 3; ++i)
                y(i) = d(i) / (lam(i) + lambda);
            return Vec3(q * y);
        };

        ClseEstimate<Scalar> out;

        // Bottom eigenspace may be degenerate; treat every eigenvalue within
        // tiny of lam(0) as part of it.
        const Scalar lam_min = lam(0);
        Scalar d_bottom_sq = Scalar(0);
        for (int i = 0; i < 3; ++i)
            if (lam(i) - lam_min <= tiny)
                d_bottom_sq += d(i) * d(i);

        if (std::sqrt(d_bottom_sq) <= tiny)
        {
            // Hard-case candidate: the pseudoinverse solution at the boundary
            // multiplier lambda = -lam_min, using only the top eigenmodes.
            Vec3 y = Vec3::Zero();
            Scalar norm2 = Scalar(0);
            for (int i = 0; i < 3; ++i)
            {
                if (lam(i) - lam_min <= tiny)
                    continue;
                y(i) = d(i) / (lam(i) - lam_min);
                norm2 += y(i) * y(i);
            }
            if (norm2 <= Scalar(1))
            {
                // Pad along the bottom eigenvector to reach the sphere. Both
                // signs of the pad minimize; the selection is deterministic
                // but flagged as ambiguous.
                const Scalar pad = std::sqrt(std::max(Scalar(0), Scalar(1) - norm2));
                Vec3 w = q * y + pad * q.col(0);
                out.weights = w;
                out.lambda = -lam_min;
                out.ambiguous = pad > std::sqrt(tiny);
                return out;
            }
            // Interior norm exceeds 1: a unique multiplier above the pole
            // still exists; fall through to bisection.
        }

        // Bracket the multiplier: the norm exceeds 1 just above the pole and
        // drops to at most 1 by lambda = -lam_min + ||d||.
        const Scalar d_norm = d.norm();
        Scalar lo = -lam_min + tiny;
        if (norm2_minus_1(lo) <= Scalar(0))
        {
            // Root sits within rounding of the pole; the boundary iterate
            // projected onto the sphere is the minimizer to working precision.
            out.weights = weights_at(lo).normalized();
            out.lambda = lo;
            return out;
        }
        Scalar hi = -lam_min + d_norm + tiny;

        for (int iter = 0; iter < 200; ++iter)
        {
            const Scalar mid = Scalar(0.5) * (lo + hi);
            if (mid == lo || mid == hi)
                break;
            if (norm2_minus_1(mid) > Scalar(0))
                lo = mid;
            else
                hi = mid;
        }
        const Scalar lambda = Scalar(0.5) * (lo + hi);
        out.weights = weights_at(lambda).normalized();
        out.lambda = lambda;
        return out;
    }

    // Norm-constrained least squares: minimizes ||V w - v||^2 over real w
    // subject to w^T w = 1.
    template <typename Scalar>
    ClseEstimate<Scalar> clse_estimate(const ComplexMatrixX<Scalar>& v_r,
                                       const ComplexVectorX<Scalar>& v)
    {
        if (v_r.rows() != v.size() || v_r.cols() != 3)
            throw std::invalid_argument("clse_estimate: dimension mismatch");
        const Eigen::Matrix<Scalar, 3, 3> b = (v_r.adjoint() * v_r).real();
        const Vector3<Scalar> c = (v_r.adjoint() * v).real();
        return solve_unit_sphere_ls(b, c);
    }

    // Channel matrix T = V_R * A_R^-1, mapping coefficient vectors to
    // sense-antenna voltages.
    template <typename Scalar>
    ComplexMatrixX<Scalar> channel_matrix(const ComplexMatrixX<Scalar>& v_r,
                                          const ComplexMatrix3<Scalar>& a_r,
                                          Scalar condition_ceiling = Scalar(kDefaultConditionCeiling))
    {
        if (v_r.cols() != 3)
            throw std::invalid_argument("channel_matrix: calibration matrix must have 3 columns");
        const Scalar cond = condition_number(a_r);
        if (!(cond <= condition_ceiling))
            throw NumericalError("channel_matrix: reference coefficient matrix is singular");
        // T = V_R A_R^-1  <=>  A_R^T T^T = V_R^T
        return a_r.transpose().partialPivLu().solve(v_r.transpose()).transpose();
    }

} // namespace mpem
