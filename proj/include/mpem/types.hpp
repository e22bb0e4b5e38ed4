// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace mpem
{

    template <typename Scalar>
    using Complex = std::complex<Scalar>;

    template <typename Scalar>
    using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

    template <typename Scalar>
    using ComplexVector3 = Eigen::Matrix<Complex<Scalar>, 3, 1>;

    template <typename Scalar>
    using ComplexMatrix3 = Eigen::Matrix<Complex<Scalar>, 3, 3>;

    template <typename Scalar>
    using ComplexVectorX = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using ComplexMatrixX = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

    template <typename Scalar>
    using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    // Real weights expressing an antenna as a superposition of the three
    // axis-dipole references. Ordering is fixed: (w_z, w_x, w_y).
    template <typename Scalar>
    using OrientationWeights = Vector3<Scalar>;

    // Double-precision aliases used by the simulator, file I/O and CLI layers.
    using real_t = double;
    using cplx_t = Complex<real_t>;

} // namespace mpem
