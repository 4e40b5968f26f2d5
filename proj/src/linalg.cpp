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
#include "qnl/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "qnl/error.hpp"

namespace qnl {

namespace pauli {
namespace {

ComplexMatrix make(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

const ComplexMatrix &identity() {
    static const ComplexMatrix m = make(1.0, 0.0, 0.0, 1.0);
    return m;
}
const ComplexMatrix &x() {
    static const ComplexMatrix m = make(0.0, 1.0, 1.0, 0.0);
    return m;
}
const ComplexMatrix &y() {
    static const ComplexMatrix m =
        make(0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0);
    return m;
}
const ComplexMatrix &z() {
    static const ComplexMatrix m = make(1.0, 0.0, 0.0, -1.0);
    return m;
}
const ComplexMatrix &sigma(int axis) {
    switch (axis) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
    default: throw InvalidInput(fmt::format("Pauli axis {} not in 0..2", axis));
    }
}

} // namespace pauli

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw InvalidInput(fmt::format("{}: expected a non-empty square matrix, got {}x{}",
                                       what, m.rows(), m.cols()));
    if (m.rows() > kMaxDim)
        throw InvalidInput(fmt::format("{}: dimension {} exceeds {}", what, m.rows(), kMaxDim));
}

int qubit_count(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return (Eigen::Index{1} << n) == dim ? n : -1;
}

} // namespace

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double hermiticity_residual(const ComplexMatrix &m) {
    if (m.rows() != m.cols())
        throw InvalidInput(fmt::format("hermiticity check on non-square {}x{} matrix",
                                       m.rows(), m.cols()));
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return hermiticity_residual(m) <= tol;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix &h) {
    require_square(h, "hermitian_eigensystem");
    const double asym = hermiticity_residual(h);
    if (asym > kHermitianTol)
        throw InvalidInput(fmt::format("matrix is not Hermitian: max asymmetry {:.3e}", asym));
    const ComplexMatrix sym = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigensolver did not converge");
    Eigensystem out{solver.eigenvalues(), solver.eigenvectors()};
    const double residual =
        (sym * out.vectors - out.vectors * out.values.asDiagonal()).cwiseAbs().maxCoeff();
    if (residual > kEigenResidualTol)
        throw std::runtime_error(
            fmt::format("eigendecomposition residual {:.3e} above {:.0e}", residual,
                        kEigenResidualTol));
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    const auto es = hermitian_eigensystem(h);
    return {es.values.data(), es.values.data() + es.values.size()};
}

std::vector<double> singular_values(const ComplexMatrix &m) {
    if (m.rows() > kMaxDim || m.cols() > kMaxDim)
        throw InvalidInput("singular_values: matrix too large");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::vector<double> singular_values(const RealMatrix &m) {
    if (m.rows() > kMaxDim || m.cols() > kMaxDim)
        throw InvalidInput("singular_values: matrix too large");
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const auto &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix &h) {
    const auto es = hermitian_eigensystem(h);
    const Eigen::VectorXd roots = es.values.cwiseMax(0.0).cwiseSqrt();
    return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix partial_transpose_b(const ComplexMatrix &rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw InvalidInput(fmt::format("partial transpose expects 4x4, got {}x{}",
                                       rho.rows(), rho.cols()));
    ComplexMatrix out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block(2 * i, 2 * j, 2, 2) = rho.block(2 * i, 2 * j, 2, 2).transpose();
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, int traced_qubit) {
    require_square(rho, "partial_trace");
    const int n = qubit_count(rho.rows());
    if (n < 2 || n > 3)
        throw InvalidInput(fmt::format("partial_trace expects 4x4 or 8x8, got {}x{}",
                                       rho.rows(), rho.cols()));
    if (traced_qubit < 0 || traced_qubit >= n)
        throw InvalidInput(fmt::format("traced qubit {} out of range for {} qubits",
                                       traced_qubit, n));
    const int shift = n - 1 - traced_qubit;
    const Eigen::Index low = Eigen::Index{1} << shift;
    const Eigen::Index dim = rho.rows() / 2;
    // Map a reduced index to the full index with the traced bit set to k.
    auto expand = [&](Eigen::Index r, Eigen::Index k) {
        return ((r / low) * 2 + k) * low + (r % low);
    };
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            for (Eigen::Index k = 0; k < 2; ++k)
                out(i, j) += rho(expand(i, k), expand(j, k));
    return out;
}

Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw InvalidInput(fmt::format("trace_product shape mismatch {}x{} vs {}x{}",
                                       a.rows(), a.cols(), b.rows(), b.cols()));
    return (a.array() * b.transpose().array()).sum();
}

double trace_product_real(const ComplexMatrix &a, const ComplexMatrix &b) {
    return trace_product(a, b).real();
}

std::string DensityDiagnostics::describe() const {
    return fmt::format("hermiticity residual {:.3e}, trace deviation {:.3e}, "
                       "min eigenvalue {:.6g} (tolerance {:.1e})",
                       hermiticity_residual, trace_deviation, min_eigenvalue, tolerance);
}

DensityDiagnostics validate_density(const ComplexMatrix &rho, double tol) {
    require_square(rho, "validate_density");
    DensityDiagnostics d;
    d.tolerance = tol;
    d.hermiticity_residual = hermiticity_residual(rho);
    d.trace_deviation = std::abs(rho.trace() - Complex(1.0, 0.0));
    const ComplexMatrix sym = (rho + rho.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    d.pass = d.hermiticity_residual <= tol && d.trace_deviation <= tol &&
             d.min_eigenvalue >= -tol;
    return d;
}

} // namespace qnl
