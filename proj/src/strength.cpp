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
#include "qnl/strength.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qnl/error.hpp"

namespace qnl {

double s_nl(const DensityMatrix &rho, const MeasurementSetting &s, ChshSign sign) {
    return std::max(p_max(rho, s, sign) - 0.75, 0.0);
}

double s_nl_witness(const DensityMatrix &rho, const MeasurementSetting &s, ChshSign sign) {
    return std::max(-expectation(w_chsh(s, sign), rho) / 8.0, 0.0);
}

double s_nl_planes(const DensityMatrix &rho) {
    double best = 0.0;
    for (Plane p : kAllPlanes) best = std::max(best, p_max_plane(rho, p) - 0.75);
    return best;
}

double negativity(const DensityMatrix &rho) {
    if (rho.dim() != 4) throw InvalidInput("negativity needs a two-qubit state");
    const double lmin = hermitian_eigenvalues(partial_transpose_b(rho.matrix())).front();
    return lmin >= -kEntanglementTol ? 0.0 : -2.0 * lmin;
}

double k_quantity(const DensityMatrix &rho, const ComplexMatrix &w) {
    const double n = negativity(rho);
    if (n <= kEntanglementTol)
        throw NotApplicable("K is undefined for a PPT state (negativity 0)");
    const ComplexMatrix prod = rho.matrix() * partial_transpose_b(rho.matrix());
    return trace_product_real(w, prod) / (4.0 * n);
}

double p_from_witness(const DensityMatrix &rho, const ComplexMatrix &w) {
    return 0.75 - expectation(w, rho) / 8.0;
}

double q_upper_bound(const DensityMatrix &rho, const ComplexMatrix &w) {
    const double p = p_from_witness(rho, w);
    if (p > 0.75 + kDetectionTol / 8.0)
        throw NotApplicable(fmt::format("witness detects the state (P = {:.6g} > 3/4)", p));
    const double k = k_quantity(rho, w);
    if (k <= 0.0)
        throw NotApplicable(fmt::format("K = {:.6g} is not positive; measure inconclusive", k));
    return k / (0.75 - p + k);
}

double uniform_safe_q(std::span<const double> thresholds) {
    if (thresholds.empty()) throw InvalidInput("no thresholds given");
    return *std::min_element(thresholds.begin(), thresholds.end());
}

double s_nl_new(const DensityMatrix &rho, const ComplexMatrix &w, double q) {
    const double bound = q_upper_bound(rho, w);
    if (!(q >= 0.0 && q < bound))
        throw InvalidInput(fmt::format("q = {} outside [0, {:.6g})", q, bound));
    return q * (p_from_witness(rho, w) - 0.75) + (1.0 - q) * k_quantity(rho, w);
}

bool StrengthReport::all_pass() const {
    return std::all_of(bounds.begin(), bounds.end(),
                       [](const BoundCheck &b) { return !b.applicable || b.pass; });
}

namespace {

BoundCheck check(std::string name, double lhs, double rhs, bool applicable, double tol = 1e-9) {
    return {std::move(name), lhs, rhs, applicable, lhs <= rhs + tol};
}

} // namespace

StrengthReport bound_suite(const DensityMatrix &rho, const MeasurementSetting &s,
                           ChshSign sign, std::optional<double> q) {
    StrengthReport r;
    r.m = horodecki_m(rho);
    r.bell_value = expectation(bell_operator(s, sign), rho);
    r.witness_value = 2.0 - r.bell_value;
    r.p_max = 0.5 * (1.0 + r.bell_value / 4.0);
    r.s_nl = std::max(r.p_max - 0.75, 0.0);
    r.negativity = negativity(rho);
    r.detected = r.witness_value < -kDetectionTol;
    const double root_m = std::sqrt(r.m);

    r.bounds.push_back(check("game probability vs Horodecki", r.p_max,
                             0.5 * (root_m / 2.0 + 1.0), true));
    r.bounds.push_back(check("witness vs Horodecki",
                             std::pow(1.0 - 0.5 * r.witness_value, 2), r.m, r.detected));
    r.bounds.push_back(check("strength vs Horodecki", r.s_nl, (root_m - 1.0) / 4.0, r.detected));
    r.bounds.push_back(check("strength global cap", r.s_nl,
                             (std::numbers::sqrt2 - 1.0) / 4.0, r.detected));

    if (!r.detected && r.negativity > kEntanglementTol) {
        const ComplexMatrix w = w_chsh(s, sign);
        r.k = k_quantity(rho, w);
        if (*r.k > 0.0) r.q_upper = q_upper_bound(rho, w);
        if (q && r.q_upper && *q >= 0.0 && *q < *r.q_upper) {
            r.s_nl_new = s_nl_new(rho, w, *q);
            const bool local = r.m <= 1.0 + 1e-12;
            r.bounds.push_back(check("mixed measure positive", 0.0, *r.s_nl_new, local, 0.0));
            r.bounds.push_back(check("mixed measure vs Horodecki", *r.s_nl_new,
                                     *q * (root_m - 1.0) / 4.0 + (1.0 - *q) * *r.k, local));
            r.bounds.push_back(
                check("mixed measure vs K", *r.s_nl_new, (1.0 - *q) * *r.k, local));
        }
    }
    return r;
}

} // namespace qnl
