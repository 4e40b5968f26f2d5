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
#include "qnl/states.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qnl/error.hpp"

namespace qnl {

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols() || (m.rows() != 4 && m.rows() != 8))
        throw InvalidInput(fmt::format("density matrix must be 4x4 or 8x8, got {}x{}",
                                       m.rows(), m.cols()));
    const auto d = validate_density(m, tol);
    if (!d.pass) throw InvalidInput("not a density matrix: " + d.describe());
    return DensityMatrix((m + m.adjoint()) * 0.5);
}

ComplexMatrix pauli_form_matrix(const PauliDiagonalForm &p) {
    const auto &id = pauli::identity();
    ComplexMatrix m = tensor(id, id);
    for (int j = 0; j < 3; ++j) {
        const auto &s = pauli::sigma(j);
        m += p.a[j] * tensor(s, id) + p.b[j] * tensor(id, s) + p.c[j] * tensor(s, s);
    }
    return m * 0.25;
}

DensityMatrix from_pauli(const PauliDiagonalForm &p) {
    const ComplexMatrix m = pauli_form_matrix(p);
    const double lmin = hermitian_eigenvalues(m).front();
    if (lmin < -kDensityTol)
        throw InvalidInput(fmt::format(
            "Pauli parameters do not give a state: eigenvalue {:.6g} is negative", lmin));
    return DensityMatrix::from_matrix(m);
}

Eigen::Matrix3d correlation_matrix(const DensityMatrix &rho) {
    if (rho.dim() != 4) throw InvalidInput("correlation matrix needs a two-qubit state");
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t(i, j) = trace_product_real(rho.matrix(),
                                         tensor(pauli::sigma(i), pauli::sigma(j)));
    return t;
}

void Canonical3Q::validate() const {
    double norm = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] >= 0.0 && lambda[i] <= 1.0))
            throw InvalidInput(fmt::format("lambda{} = {} outside [0, 1]", i, lambda[i]));
        norm += lambda[i] * lambda[i];
    }
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw InvalidInput(fmt::format("theta = {} outside [0, pi]", theta));
    if (std::abs(norm - 1.0) > 1e-10)
        throw InvalidInput(fmt::format("sum of lambda^2 is {:.12g}, expected 1", norm));
}

Canonical3Q Canonical3Q::ghz() {
    const double h = std::numbers::sqrt2 / 2.0;
    return {{h, 0.0, 0.0, 0.0, h}, 0.0};
}

Canonical3Q Canonical3Q::maximal_slice(double theta) {
    const double h = std::numbers::sqrt2 / 2.0;
    return {{h, 0.0, 0.0, h * std::cos(theta), h * std::sin(theta)}, 0.0};
}

Canonical3Q Canonical3Q::wclass1(double l0) {
    return {{l0, 0.0, 0.3, std::sqrt(std::max(0.0, 0.91 - l0 * l0)), 0.0}, 0.0};
}

Canonical3Q Canonical3Q::wclass2(double l0) {
    return {{l0, 0.7, 0.0, std::sqrt(std::max(0.0, 0.51 - l0 * l0)), 0.0}, 0.0};
}

Eigen::VectorXcd canonical_vector(const Canonical3Q &c) {
    c.validate();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    const auto &l = c.lambda;
    v(0) = l[0];
    v(4) = l[1] * std::polar(1.0, c.theta);
    v(5) = l[2];
    v(6) = l[3];
    v(7) = l[4];
    return v;
}

DensityMatrix canonical_to_state(const Canonical3Q &c) {
    const Eigen::VectorXcd v = canonical_vector(c);
    return DensityMatrix::from_matrix(v * v.adjoint());
}

DensityMatrix reduce_to_ab(const Canonical3Q &c) {
    c.validate();
    const auto &l = c.lambda;
    const Complex phase = std::polar(1.0, c.theta);
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = l[0] * l[0];
    m(0, 2) = l[0] * l[1] * std::conj(phase);
    m(0, 3) = l[0] * l[3];
    m(2, 2) = l[1] * l[1] + l[2] * l[2];
    m(2, 3) = l[1] * l[3] * phase + l[2] * l[4];
    m(3, 3) = l[3] * l[3] + l[4] * l[4];
    m(2, 0) = std::conj(m(0, 2));
    m(3, 0) = std::conj(m(0, 3));
    m(3, 2) = std::conj(m(2, 3));
    return DensityMatrix::from_matrix(m);
}

namespace {

constexpr double kPi = std::numbers::pi;

const FamilyInfo kFamilies[] = {
    {Family::kRho1, "rho1", "", 0, 0, false, false},
    {Family::kRho2, "rho2", "", 0, 0, false, false},
    {Family::kRho3, "rho3", "", 0, 0, false, false},
    {Family::kRhoX, "rho-x", "x", 0.0, 1.0 / 3.0, false, false},
    {Family::kRhoN, "rho-n", "a", 0.1, 0.65, true, true},
    {Family::kMaximalSlice, "ms", "theta", 0.0, kPi / 2.0, false, false},
    {Family::kWClass1, "wclass1", "lambda0", 0.0, 0.953939, false, false},
    {Family::kWClass2, "wclass2", "lambda0", 0.1, 0.7, false, false},
    {Family::kPhiPlus, "phi-plus", "", 0, 0, false, false},
    {Family::kMaximallyMixed, "mixed", "", 0, 0, false, false},
};

ComplexMatrix real4(std::initializer_list<double> rows) {
    ComplexMatrix m(4, 4);
    auto it = rows.begin();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = *it++;
    return m;
}

} // namespace

bool FamilyInfo::contains(double v) const {
    const bool above = lo_open ? v > lo : v >= lo;
    const bool below = hi_open ? v < hi : v <= hi;
    return above && below;
}

std::string FamilyInfo::interval() const {
    return fmt::format("{}{:.6g}, {:.6g}{}", lo_open ? '(' : '[', lo, hi, hi_open ? ')' : ']');
}

std::span<const FamilyInfo> families() { return kFamilies; }

const FamilyInfo &family_info(Family f) {
    for (const auto &info : kFamilies)
        if (info.family == f) return info;
    throw InvalidInput("unknown family");
}

std::optional<Family> family_from_tag(std::string_view tag) {
    for (const auto &info : kFamilies)
        if (info.tag == tag) return info.family;
    return std::nullopt;
}

DensityMatrix named_state(Family f, std::optional<double> parameter) {
    const auto &info = family_info(f);
    if (info.has_parameter()) {
        if (!parameter)
            throw InvalidInput(fmt::format("family '{}' needs parameter {} in {}", info.tag,
                                           info.parameter_name, info.interval()));
        if (!info.contains(*parameter))
            throw InvalidInput(fmt::format("{} = {} outside {} for family '{}'",
                                           info.parameter_name, *parameter, info.interval(),
                                           info.tag));
    } else if (parameter) {
        throw InvalidInput(fmt::format("family '{}' takes no parameter", info.tag));
    }
    const double p = parameter.value_or(0.0);
    switch (f) {
    case Family::kRho1:
        return from_pauli({Vec3(0.001, 0, 0), Vec3::Zero(), Vec3(0.8, 0.89, -0.9)});
    case Family::kRho2:
        return from_pauli({Vec3::Zero(), Vec3::Zero(), Vec3(0.7, 0.2, -0.5)});
    case Family::kRho3:
        return from_pauli({Vec3(-0.01, 0, 0), Vec3(0, 0, 0.002), Vec3(-0.7, -0.7, -0.67)});
    case Family::kRhoX:
        return DensityMatrix::from_matrix(real4({p, 0, 0, 0,
                                                 0, 1.0 / 3.0, p, 0,
                                                 0, p, 1.0 / 3.0, 0,
                                                 0, 0, 0, 1.0 / 3.0 - p}));
    case Family::kRhoN:
        return DensityMatrix::from_matrix(real4({(1 - p) / 6, 0, 0, 0.0005,
                                                 0, 5.0 / 6.0 - p, -0.251, 0,
                                                 0, -0.251, p, 0,
                                                 0.0005, 0, 0, p / 6}));
    case Family::kMaximalSlice: {
        const double c = std::cos(p);
        return DensityMatrix::from_matrix(real4({0.5, 0, 0, c / 2,
                                                 0, 0, 0, 0,
                                                 0, 0, 0, 0,
                                                 c / 2, 0, 0, 0.5}));
    }
    case Family::kWClass1: {
        const double s = std::sqrt(std::max(0.0, 0.91 - p * p));
        return DensityMatrix::from_matrix(real4({p * p, 0, 0, p * s,
                                                 0, 0, 0, 0,
                                                 0, 0, 0.09, 0,
                                                 p * s, 0, 0, 0.91 - p * p}));
    }
    case Family::kWClass2: {
        const double t = std::sqrt(0.51 - p * p);
        return DensityMatrix::from_matrix(real4({p * p, 0, 0.7 * p, p * t,
                                                 0, 0, 0, 0,
                                                 0.7 * p, 0, 0.49, 0.7 * t,
                                                 p * t, 0, 0.7 * t, t * t}));
    }
    case Family::kPhiPlus:
        return DensityMatrix::from_matrix(phi_plus_projector());
    case Family::kMaximallyMixed:
        return DensityMatrix::from_matrix(ComplexMatrix::Identity(4, 4) * 0.25);
    }
    throw InvalidInput("unknown family");
}

std::optional<Canonical3Q> family_purification(Family f, double parameter) {
    switch (f) {
    case Family::kMaximalSlice: return Canonical3Q::maximal_slice(parameter);
    case Family::kWClass1: return Canonical3Q::wclass1(parameter);
    case Family::kWClass2: return Canonical3Q::wclass2(parameter);
    default: return std::nullopt;
    }
}

ComplexMatrix phi_plus_projector() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = v(3) = std::numbers::sqrt2 / 2.0;
    return v * v.adjoint();
}

} // namespace qnl
