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
#include "qnl/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qnl/error.hpp"
#include "qnl/random.hpp"

namespace qnl {

namespace {

void require_unit(const Vec3 &v, const char *name) {
    const double n = v.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTol)
        throw InvalidInput(fmt::format("{} has norm {:.12g}, expected unit length", name, n));
}

Vec3 rescale(const Vec3 &v, const char *name) {
    const double n = v.norm();
    if (!std::isfinite(n) || n < 1e-300)
        throw InvalidInput(fmt::format("{} cannot be normalized (norm {})", name, n));
    return v / n;
}

} // namespace

MeasurementSetting::MeasurementSetting(const Vec3 &a0, const Vec3 &a1, const Vec3 &b0,
                                       const Vec3 &b1)
    : alice_{a0, a1}, bob_{b0, b1} {
    require_unit(a0, "A0 direction");
    require_unit(a1, "A1 direction");
    require_unit(b0, "B0 direction");
    require_unit(b1, "B1 direction");
}

MeasurementSetting MeasurementSetting::normalized(const Vec3 &a0, const Vec3 &a1,
                                                  const Vec3 &b0, const Vec3 &b1) {
    return {rescale(a0, "A0 direction"), rescale(a1, "A1 direction"),
            rescale(b0, "B0 direction"), rescale(b1, "B1 direction")};
}

std::pair<int, int> plane_axes(Plane p) {
    switch (p) {
    case Plane::kXY: return {0, 1};
    case Plane::kYZ: return {1, 2};
    case Plane::kXZ: return {0, 2};
    }
    throw InvalidInput("unknown plane");
}

std::string_view plane_name(Plane p) {
    switch (p) {
    case Plane::kXY: return "xy";
    case Plane::kYZ: return "yz";
    case Plane::kXZ: return "xz";
    }
    return "?";
}

std::optional<Plane> plane_from_name(std::string_view name) {
    if (name == "xy" || name == "yx") return Plane::kXY;
    if (name == "yz" || name == "zy") return Plane::kYZ;
    if (name == "xz" || name == "zx") return Plane::kXZ;
    return std::nullopt;
}

std::string_view sign_name(ChshSign s) {
    return s == ChshSign::kSecondMinus ? "second-minus" : "last-minus";
}

std::optional<ChshSign> sign_from_name(std::string_view name) {
    if (name == "second-minus") return ChshSign::kSecondMinus;
    if (name == "last-minus") return ChshSign::kLastMinus;
    return std::nullopt;
}

int chsh_coefficient(ChshSign sign, int s, int t) {
    if (sign == ChshSign::kSecondMinus) return (s == 0 && t == 1) ? -1 : 1;
    return (s == 1 && t == 1) ? -1 : 1;
}

ComplexMatrix observable(const Vec3 &v) {
    require_unit(v, "observable direction");
    return v[0] * pauli::x() + v[1] * pauli::y() + v[2] * pauli::z();
}

ComplexMatrix bell_operator(const MeasurementSetting &s, ChshSign sign) {
    ComplexMatrix b = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            b += static_cast<double>(chsh_coefficient(sign, i, j)) *
                 tensor(observable(s.alice(i)), observable(s.bob(j)));
    return b;
}

MeasurementSetting plane_setting(Plane p) {
    const auto [i, j] = plane_axes(p);
    const Vec3 ei = Vec3::Unit(i), ej = Vec3::Unit(j);
    const double h = std::numbers::sqrt2 / 2.0;
    return MeasurementSetting::normalized(ei, ej, h * (ei + ej), h * (ei - ej));
}

ComplexMatrix plane_bell_operator(Plane p) {
    const auto [i, j] = plane_axes(p);
    const auto &si = pauli::sigma(i);
    const auto &sj = pauli::sigma(j);
    return std::numbers::sqrt2 * (tensor(si, si) + tensor(sj, sj));
}

double expectation(const ComplexMatrix &op, const DensityMatrix &rho) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim())
        throw InvalidInput(fmt::format("operator is {}x{} but the state is {}x{}", op.rows(),
                                       op.cols(), rho.dim(), rho.dim()));
    const double asym = hermiticity_residual(op);
    if (asym > kHermitianTol)
        throw InvalidInput(fmt::format("operator is not Hermitian: max asymmetry {:.3e}", asym));
    const Complex v = trace_product(op, rho.matrix());
    if (std::abs(v.imag()) > 1e-10)
        throw std::runtime_error(fmt::format("expectation has imaginary part {:.3e}", v.imag()));
    return v.real();
}

double chsh_value(const Eigen::Matrix3d &t, const MeasurementSetting &s, ChshSign sign) {
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            v += chsh_coefficient(sign, i, j) * s.alice(i).dot(t * s.bob(j));
    return v;
}

double horodecki_m(const DensityMatrix &rho) {
    const Eigen::Matrix3d t = correlation_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t,
                                                     Eigen::EigenvaluesOnly);
    const auto &u = es.eigenvalues(); // ascending
    return std::clamp(u[1] + u[2], 0.0, 2.0);
}

bool violates_chsh(const DensityMatrix &rho) { return horodecki_m(rho) > 1.0 + 1e-12; }

double max_bell_value(const DensityMatrix &rho) { return 2.0 * std::sqrt(horodecki_m(rho)); }

double p_max(const DensityMatrix &rho, const MeasurementSetting &s, ChshSign sign) {
    return 0.5 * (1.0 + expectation(bell_operator(s, sign), rho) / 4.0);
}

double p_max_plane(const DensityMatrix &rho, Plane p) {
    return 0.5 * (1.0 + expectation(plane_bell_operator(p), rho) / 4.0);
}

Vec3 unit_from_angles(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
            std::cos(polar)};
}

Vec3 unit_from_uniforms(double u, double v) {
    return unit_from_angles(std::acos(1.0 - 2.0 * u), 2.0 * std::numbers::pi * v);
}

namespace {

/// Replace `v` by the unit vector along `g`; keeps `v` when g vanishes.
void align(Vec3 &v, const Vec3 &g) {
    const double n = g.norm();
    if (n > 1e-300) v = g / n;
}

} // namespace

SettingOptimum optimize_settings(const DensityMatrix &rho, ChshSign sign,
                                 const OptimizerOptions &opts) {
    if (opts.starts < 1) throw InvalidInput("optimizer needs at least one start");
    const Eigen::Matrix3d t = correlation_matrix(rho);
    std::optional<SettingOptimum> best;
    for (int start = 0; start < opts.starts; ++start) {
        SplitMix rng(opts.seed, static_cast<std::uint64_t>(start));
        std::array<Vec3, 2> a, b;
        for (auto *v : {&a[0], &a[1], &b[0], &b[1]}) {
            const double u = rng.uniform();
            *v = unit_from_uniforms(u, rng.uniform());
        }
        auto value = [&] {
            double v = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    v += chsh_coefficient(sign, i, j) * a[i].dot(t * b[j]);
            return v;
        };
        double current = value();
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            for (int i = 0; i < 2; ++i)
                align(a[i], t * (chsh_coefficient(sign, i, 0) * b[0] +
                                 chsh_coefficient(sign, i, 1) * b[1]));
            for (int j = 0; j < 2; ++j)
                align(b[j], t.transpose() * (chsh_coefficient(sign, 0, j) * a[0] +
                                             chsh_coefficient(sign, 1, j) * a[1]));
            const double next = value();
            const bool done = next - current <= opts.tolerance;
            current = next;
            if (done) break;
        }
        if (!best || current > best->value)
            best = SettingOptimum{MeasurementSetting::normalized(a[0], a[1], b[0], b[1]),
                                  current};
    }
    return *best;
}

} // namespace qnl
