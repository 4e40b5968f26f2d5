// Copyright 2026 The qnl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;

/// Largest extent on any axis of a matrix handled by this library.
inline constexpr Eigen::Index kMaxDim = 9;
/// Entrywise tolerance on |m_ij - conj(m_ji)| for a matrix to count as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Bound on max |HV - V diag(w)| accepted from the eigensolver.
inline constexpr double kEigenResidualTol = 1e-10;

namespace pauli {

/// 2x2 identity and the three Pauli matrices; axis 0,1,2 is x,y,z.
const ComplexMatrix &identity();
const ComplexMatrix &x();
const ComplexMatrix &y();
const ComplexMatrix &z();
const ComplexMatrix &sigma(int axis);

} // namespace pauli

/// Kronecker product; the row/col counts multiply.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

template <class... Rest>
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b,
                     const Rest &...rest) {
    return tensor(tensor(a, b), rest...);
}

/// max_ij |m_ij - conj(m_ji)|. Square input required.
double hermiticity_residual(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);

struct Eigensystem {
    Eigen::VectorXd values; // ascending
    ComplexMatrix vectors;  // columns
};

/// Hermitian eigendecomposition with an enforced reconstruction residual.
/// Throws InvalidInput for non-square, oversize, or non-Hermitian input; the
/// message carries the measured asymmetry.
Eigensystem hermitian_eigensystem(const ComplexMatrix &h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix &m);
std::vector<double> singular_values(const RealMatrix &m);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero (numerical noise) are clamped.
ComplexMatrix psd_sqrt(const ComplexMatrix &h);

/// Transpose of the second qubit of a two-qubit operator: every 2x2 block of
/// the 2x2 block partition is transposed in place.
ComplexMatrix partial_transpose_b(const ComplexMatrix &rho);

/// Trace out one qubit of an n-qubit operator (dimension 4 or 8). Qubit 0 is
/// the leftmost tensor factor.
ComplexMatrix partial_trace(const ComplexMatrix &rho, int traced_qubit);

/// Re Tr[a b] without forming the product.
double trace_product_real(const ComplexMatrix &a, const ComplexMatrix &b);
Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

struct DensityDiagnostics {
    double hermiticity_residual = 0.0;
    double trace_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    std::string describe() const;
};

/// Checks Hermiticity, unit trace and positive semidefiniteness against `tol`.
/// Never throws for square input; the verdict is in `pass`.
DensityDiagnostics validate_density(const ComplexMatrix &rho, double tol);

} // namespace qnl
