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
#include "qnl/witness.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qnl/error.hpp"

namespace qnl {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

ComplexMatrix w_chsh(const MeasurementSetting &s, ChshSign sign) {
    return 2.0 * ComplexMatrix::Identity(4, 4) - bell_operator(s, sign);
}

ComplexMatrix w_plane(Plane p) {
    return 2.0 * ComplexMatrix::Identity(4, 4) - plane_bell_operator(p);
}

ComplexMatrix w_opt() {
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (Plane p : kAllPlanes) sum += plane_bell_operator(p);
    return 0.25 * (ComplexMatrix::Identity(4, 4) + sum / (2.0 * kSqrt2));
}

ComplexMatrix w_opt_from_projector() { return partial_transpose_b(phi_plus_projector()); }

bool detects(const ComplexMatrix &w, const DensityMatrix &rho, double tol) {
    return expectation(w, rho) < -tol;
}

WitnessInterval witness_interval() {
    // Tr[W_opt rho] = (sum P - 3/2 + 1/(2 sqrt2)) / sqrt2.
    auto at = [](double p_sum) { return (p_sum - 1.5 + 1.0 / (2.0 * kSqrt2)) / kSqrt2; };
    return {at(0.75), at(2.25)};
}

WitnessInequality witness_inequality(const DensityMatrix &rho) {
    WitnessInequality out;
    out.value = expectation(w_opt(), rho);
    out.precondition_met = true;
    for (std::size_t k = 0; k < kAllPlanes.size(); ++k) {
        out.plane_bell[k] = expectation(plane_bell_operator(kAllPlanes[k]), rho);
        if (std::abs(out.plane_bell[k]) > 2.0 + 1e-12) out.precondition_met = false;
    }
    if (out.precondition_met) {
        const auto iv = witness_interval();
        out.within = out.value >= iv.lower - 1e-12 && out.value <= iv.upper + 1e-12;
    }
    return out;
}

double plane_witness_sum_from_optimal(double w) { return 6.0 - 2.0 * kSqrt2 * (4.0 * w - 1.0); }

ChshSumBounds chsh_sum_bounds(const DensityMatrix &rho) {
    ChshSumBounds out;
    const auto iv = witness_interval();
    out.lower = plane_witness_sum_from_optimal(0.0);
    out.upper = plane_witness_sum_from_optimal(iv.lower);
    const double w = expectation(w_opt(), rho);
    out.from_optimal = plane_witness_sum_from_optimal(w);
    bool planes_ok = true;
    for (Plane p : kAllPlanes) {
        const double v = expectation(w_plane(p), rho);
        out.sum += v;
        if (v < -1e-12) planes_ok = false;
    }
    out.hypotheses_met = planes_ok && w >= iv.lower - 1e-12 && w <= 1e-12;
    if (out.hypotheses_met)
        out.within = out.sum >= out.lower - 1e-9 && out.sum <= out.upper + 1e-9;
    return out;
}

double u_bound_from_value(double w) { return 0.75 - 1.0 / (2.0 * kSqrt2) + kSqrt2 * w; }

double u_bound(const DensityMatrix &rho) {
    for (Plane p : kAllPlanes) {
        const double b = expectation(plane_bell_operator(p), rho);
        if (std::abs(b) > 2.0 + 1e-12)
            throw NotApplicable(fmt::format("plane {} Bell value {:.6g} outside [-2, 2]",
                                            plane_name(p), b));
    }
    const double w = expectation(w_opt(), rho);
    if (!(w < -kDetectionTol))
        throw NotApplicable(fmt::format("optimal witness does not detect the state ({:.6g})", w));
    return u_bound_from_value(w);
}

double theorem1_expression(const MeasurementSetting &s, const Vec3 &c) {
    const Vec3 &l0 = s.alice(0), &l1 = s.alice(1), &m0 = s.bob(0), &m1 = s.bob(1);
    double v = 0.0;
    for (int j = 0; j < 3; ++j)
        v += c[j] * (l0[j] * (m0[j] - m1[j]) + l1[j] * (m0[j] + m1[j]));
    return v;
}

double result7_snl(const MeasurementSetting &s, const Vec3 &c) {
    const double lhs = theorem1_expression(s, c);
    const double w = 2.0 - lhs;
    if (!(w < -kDetectionTol))
        throw NotApplicable(fmt::format("witness value {:.6g} is not negative", w));
    return (lhs - 2.0) / 8.0;
}

} // namespace qnl
