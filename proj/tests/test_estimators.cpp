// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mpem/estimators.hpp"
#include "mpem/vsh.hpp"
#include "oracles.hpp"

using namespace mpem;

namespace
{
    const PhysicalConstantsD kC = PhysicalConstantsD::from_frequency(3.0e9);

    bool close_rel(double a, double b, double tol)
    {
        if (a == b)
            return true;
        return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
    }

    double residual(const ComplexMatrixX<double>& v_r, const ComplexVectorX<double>& v,
                    const Eigen::Vector3d& w)
    {
        return (v_r * w.cast<cplx_t>() - v).norm();
    }
} // namespace

TEST_CASE("crosstalk correction inverts the coupling")
{
    ComplexMatrixX<double> eye = ComplexMatrixX<double>::Identity(4, 4);
    ComplexVectorX<double> v(4);
    v << cplx_t(1, 2), cplx_t(0, -1), cplx_t(3, 0), cplx_t(-2, 0.5);

    CHECK((correct_crosstalk(eye, v) - v).norm() == 0.0);
    CHECK((correct_crosstalk<double>(2.0 * eye, v) - 0.5 * v).norm() <= 1e-15 * v.norm());

    // round trip through a random well-conditioned coupling
    auto m = ComplexMatrixX<double>::Identity(6, 6).eval();
    m += 0.2 * oracle::random_complex_matrix(6, 6, 42);
    ComplexVectorX<double> truth = oracle::random_complex_matrix(6, 1, 43).col(0);
    const ComplexVectorX<double> measured = m * truth;
    CHECK((correct_crosstalk(m, measured) - truth).norm() <= 1e-10 * truth.norm());

    // singular coupling is rejected with a diagnostic
    ComplexMatrixX<double> sing = ComplexMatrixX<double>::Zero(3, 3);
    sing(0, 0) = 1.0;
    sing(1, 1) = 1.0;
    ComplexVectorX<double> v3 = ComplexVectorX<double>::Ones(3);
    CHECK_THROWS_AS(correct_crosstalk(sing, v3), NumericalError);
    CHECK_THROWS_AS(correct_crosstalk(eye, v3), std::invalid_argument); // dimension mismatch
}

TEST_CASE("one-entropy: determinant identities and sentinels")
{
    const auto eye = ComplexMatrixX<double>::Identity(3, 3).eval();
    CHECK(one_entropy(eye) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(one_entropy((2.0 * eye).eval()) == doctest::Approx(3.0).epsilon(1e-12));

    ComplexMatrixX<double> repeated(3, 3);
    repeated.row(0) = oracle::random_complex_matrix(1, 3, 7).row(0);
    repeated.row(1) = repeated.row(0);
    repeated.row(2) = oracle::random_complex_matrix(1, 3, 8).row(0);
    CHECK(one_entropy(repeated) == -std::numeric_limits<double>::infinity());

    // invariant under unitary mixing of the columns' ambient space
    const auto v = oracle::random_complex_matrix(3, 5, 11);
    const auto u = oracle::random_unitary(3, 12);
    CHECK(close_rel(one_entropy((u * v).eval()), one_entropy(v), 1e-9));

    // scalar scaling shifts by rows * log2|c|
    const cplx_t c(0.3, -1.1);
    const double shift = 3.0 * std::log2(std::abs(c));
    CHECK(one_entropy((c * v).eval()) == doctest::Approx(one_entropy(v) + shift).epsilon(1e-9));
}

TEST_CASE("condition number")
{
    CHECK(condition_number(ComplexMatrixX<double>::Identity(3, 3).eval()) ==
          doctest::Approx(1.0).epsilon(1e-12));

    Eigen::Matrix3d d = Eigen::Vector3d(10, 1, 1).asDiagonal();
    CHECK(condition_number(d) == doctest::Approx(10.0).epsilon(1e-12));

    ComplexMatrixX<double> rank1 = ComplexMatrixX<double>::Zero(3, 3);
    rank1(0, 0) = 2.0;
    CHECK(std::isinf(condition_number(rank1)));

    CHECK_THROWS_AS(condition_number(ComplexMatrixX<double>::Zero(2, 2).eval()), NumericalError);
}

TEST_CASE("subset selection enumerates every combination and maximizes the 1-entropy")
{
    const auto v = oracle::random_complex_matrix(10, 3, 101);

    // independent brute force over all i < j < l triples
    double best_h1 = -std::numeric_limits<double>::infinity();
    std::vector<Eigen::Index> best;
    int count = 0;
    for (Eigen::Index i = 0; i < 10; ++i)
        for (Eigen::Index j = i + 1; j < 10; ++j)
            for (Eigen::Index l = j + 1; l < 10; ++l)
            {
                ++count;
                ComplexMatrixX<double> rows(3, 3);
                rows.row(0) = v.row(i);
                rows.row(1) = v.row(j);
                rows.row(2) = v.row(l);
                const double h1 = one_entropy(rows);
                if (h1 > best_h1)
                {
                    best_h1 = h1;
                    best = {i, j, l};
                }
            }
    CHECK(count == 120);

    const auto sel = select_subset(v, 3);
    CHECK(sel.indices == best);
    CHECK(sel.h1 == doctest::Approx(best_h1).epsilon(1e-12));
    CHECK(sel.condition > 1.0);

    // a dominant identity block wins against near-zero rows
    ComplexMatrixX<double> dominant = 1e-6 * oracle::random_complex_matrix(8, 3, 55);
    dominant.row(2) = Eigen::RowVector3cd(1, 0, 0);
    dominant.row(5) = Eigen::RowVector3cd(0, 1, 0);
    dominant.row(6) = Eigen::RowVector3cd(0, 0, 1);
    const auto sel_dom = select_subset(dominant, 3);
    CHECK(sel_dom.indices == std::vector<Eigen::Index>{2, 5, 6});

    // argmax is invariant under global scaling
    const auto sel_scaled = select_subset((cplx_t(0, 2.5) * v).eval(), 3);
    CHECK(sel_scaled.indices == sel.indices);
}

TEST_CASE("subset selection: greedy agrees closely with exhaustive and respects the budget")
{
    double worst_gap = 0.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        const auto v = oracle::random_complex_matrix(6, 3, 200 + seed);
        const auto ex = select_subset(v, 3, SelectionStrategy::Exhaustive);
        const auto gr = select_subset(v, 3, SelectionStrategy::Greedy);
        CHECK(gr.h1 <= ex.h1 + 1e-9);
        worst_gap = std::max(worst_gap, ex.h1 - gr.h1);
    }
    MESSAGE("greedy vs exhaustive worst H1 gap over 30 draws: ", worst_gap, " bits");

    const auto big = oracle::random_complex_matrix(40, 3, 300);
    CHECK_THROWS_AS(select_subset(big, 12, SelectionStrategy::Exhaustive), NumericalError);
    CHECK_NOTHROW(select_subset(big, 12, SelectionStrategy::Greedy));
}

TEST_CASE("matrix-inversion estimate")
{
    ComplexMatrixX<double> eye = ComplexMatrixX<double>::Identity(3, 3);
    ComplexVectorX<double> v(3);
    v << 1.0, 0.0, 0.0;
    const auto est = mi_estimate(eye, v);
    CHECK((est.weights - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);
    CHECK(est.imag_norm == 0.0);

    // noiseless forward model round trip
    const auto v_r = oracle::random_complex_matrix(3, 3, 400);
    const Eigen::Vector3d w_true(0.3, -0.8, 0.52);
    const ComplexVectorX<double> meas = v_r * w_true.cast<cplx_t>();
    const auto rec = mi_estimate(v_r, meas);
    CHECK((rec.weights - w_true).norm() <= 1e-10);
    CHECK(rec.imag_norm <= 1e-10);

    ComplexMatrixX<double> degen = v_r;
    degen.row(1) = degen.row(0);
    CHECK_THROWS_WITH_AS(mi_estimate(degen, meas), doctest::Contains("H1"), NumericalError);
}

TEST_CASE("least-squares estimate matches the brute-force residual minimizer")
{
    // real orthonormal columns: normal equations collapse
    ComplexMatrixX<double> q = ComplexMatrixX<double>::Zero(5, 3);
    q(0, 0) = 1.0;
    q(2, 1) = 1.0;
    q(4, 2) = 1.0;
    const Eigen::Vector3d w_true(0.4, 1.2, -0.3);
    CHECK((lse_estimate(q, (q * w_true.cast<cplx_t>()).eval()) - w_true).norm() <= 1e-14);

    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const auto v_r = oracle::random_complex_matrix(10, 3, 500 + seed);
        RandomStream rng(600 + seed, "test/lse");
        const Eigen::Vector3d w_probe = oracle::random_unit_vector(rng);
        ComplexVectorX<double> noise(10);
        for (int i = 0; i < 10; ++i)
            noise(i) = 0.3 * rng.next_complex_normal();
        const ComplexVectorX<double> v = v_r * w_probe.cast<cplx_t>() + noise;

        const Eigen::Vector3d w_lse = lse_estimate(v_r, v);
        const Eigen::Vector3d w_grid = oracle::grid_refine_lse(v_r, v);
        CHECK((w_lse - w_grid).norm() <= 1e-8);

        // optimality against random probes
        for (int p = 0; p < 1000; ++p)
        {
            Eigen::Vector3d w_rand;
            const auto [n1, n2] = rng.next_normal_pair();
            const auto [n3, n4] = rng.next_normal_pair();
            (void)n4;
            w_rand << n1, n2, n3;
            CHECK(residual(v_r, v, w_lse) <= residual(v_r, v, w_rand) + 1e-12);
        }
    }

    // square noiseless system: agrees with the matrix-inversion estimate
    const auto sq = oracle::random_complex_matrix(3, 3, 700);
    const Eigen::Vector3d w0(0.9, 0.1, -0.4);
    const ComplexVectorX<double> v0 = sq * w0.cast<cplx_t>();
    CHECK((lse_estimate(sq, v0) - mi_estimate(sq, v0).weights).norm() <= 1e-10);
}

TEST_CASE("norm-constrained least squares: closed form and recovery")
{
    // (1 + lambda) w = c with ||w|| = 1 forces lambda = 1, w = c/2
    const auto sol = solve_unit_sphere_ls<double>(Eigen::Matrix3d::Identity(),
                                                  Eigen::Vector3d(2, 0, 0));
    CHECK((sol.weights - Eigen::Vector3d(1, 0, 0)).norm() <= 1e-12);
    CHECK(sol.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(sol.ambiguous);

    // noiseless data generated on the sphere is recovered
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const auto v_r = oracle::random_complex_matrix(10, 3, 800 + seed);
        RandomStream rng(900 + seed, "test/clse");
        const Eigen::Vector3d w_true = oracle::random_unit_vector(rng);
        const ComplexVectorX<double> v = v_r * w_true.cast<cplx_t>();
        const auto est = clse_estimate(v_r, v);
        CHECK((est.weights - w_true).norm() <= 1e-8);
        CHECK(std::abs(est.weights.norm() - 1.0) <= 1e-10);
    }
}

TEST_CASE("norm-constrained least squares: optimality under noise")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const auto v_r = oracle::random_complex_matrix(10, 3, 1000 + seed);
        RandomStream rng(1100 + seed, "test/clse-noise");
        const Eigen::Vector3d w_true = oracle::random_unit_vector(rng);
        ComplexVectorX<double> v = v_r * w_true.cast<cplx_t>();
        for (int i = 0; i < 10; ++i)
            v(i) += 0.5 * rng.next_complex_normal();

        const auto est = clse_estimate(v_r, v);
        CHECK(std::abs(est.weights.norm() - 1.0) <= 1e-10);

        const double r_clse = residual(v_r, v, est.weights);

        // no random unit probe does better
        for (int p = 0; p < 1000; ++p)
        {
            const Eigen::Vector3d probe = oracle::random_unit_vector(rng);
            CHECK(r_clse <= residual(v_r, v, probe) + 1e-12);
        }

        // nor does the unconstrained solution renormalized to the sphere
        const Eigen::Vector3d w_lse = lse_estimate(v_r, v);
        if (w_lse.norm() > 0)
            CHECK(r_clse <= residual(v_r, v, w_lse.normalized()) + 1e-12);
    }
}

TEST_CASE("norm-constrained least squares: degenerate branches")
{
    // zero data: minimal eigenvector, flagged ambiguous
    const Eigen::Matrix3d b = Eigen::Vector3d(1, 2, 3).asDiagonal();
    const auto zero_case = solve_unit_sphere_ls<double>(b, Eigen::Vector3d::Zero());
    CHECK(zero_case.ambiguous);
    CHECK(std::abs(zero_case.weights.norm() - 1.0) <= 1e-12);
    // stationarity with c = 0: (B + lambda I) w = 0
    CHECK((b * zero_case.weights + zero_case.lambda * zero_case.weights).norm() <= 1e-9);
    CHECK(std::abs(zero_case.weights.dot(Eigen::Vector3d(1, 0, 0))) == doctest::Approx(1.0).epsilon(1e-12));

    // hard case: data orthogonal to the bottom eigenvector with an interior
    // pseudoinverse solution; the result pads along that eigenvector
    const Eigen::Vector3d c(0.0, 0.3, 0.8);
    const auto hard = solve_unit_sphere_ls<double>(b, c);
    CHECK(std::abs(hard.weights.norm() - 1.0) <= 1e-12);
    CHECK(hard.lambda == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(hard.ambiguous);
    CHECK(hard.weights(1) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(hard.weights(2) == doctest::Approx(0.4).epsilon(1e-9));

    // optimality of the hard-case solution against dense sphere probes
    RandomStream rng(1300, "test/hard");
    const auto objective = [&](const Eigen::Vector3d& w) {
        return w.dot(b * w) - 2.0 * c.dot(w);
    };
    for (int p = 0; p < 20000; ++p)
        CHECK(objective(hard.weights) <= objective(oracle::random_unit_vector(rng)) + 1e-10);
}

TEST_CASE("channel matrix")
{
    const auto a_r = reference_coefficient_matrix(kC);

    // calibration equal to the references gives the identity channel
    const ComplexMatrixX<double> t_eye = channel_matrix(ComplexMatrixX<double>(a_r), a_r);
    CHECK((t_eye - ComplexMatrixX<double>::Identity(3, 3)).norm() <= 1e-12);

    const auto t = oracle::random_complex_matrix(10, 3, 1400);
    const ComplexMatrixX<double> v_r = t * a_r;
    const auto t_rec = channel_matrix(v_r, a_r);
    CHECK((t_rec - t).norm() <= 1e-10 * t.norm());
    CHECK((t_rec * a_r - v_r).norm() <= 1e-12 * v_r.norm());
}
