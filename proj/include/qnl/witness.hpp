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

#include <array>
#include <optional>

#include "qnl/bell.hpp"

namespace qnl {

/// Expectations at or above -kDetectionTol count as non-detection.
inline constexpr double kDetectionTol = 1e-9;

/// 2I - B with the matching sign pattern.
ComplexMatrix w_chsh(const MeasurementSetting &s, ChshSign sign = ChshSign::kSecondMinus);
ComplexMatrix w_plane(Plane p);
/// 1/4 [I + (B_xy + B_xz + B_yz) / (2 sqrt2)].
ComplexMatrix w_opt();
/// Partial transpose of the |Phi+> projector; equals w_opt().
ComplexMatrix w_opt_from_projector();

bool detects(const ComplexMatrix &w, const DensityMatrix &rho, double tol = kDetectionTol);

/// Interval for Tr[W_opt rho] implied by 3/4 <= sum of plane P_max <= 9/4.
struct WitnessInterval {
    double lower;
    double upper;
};
WitnessInterval witness_interval();

struct WitnessInequality {
    double value = 0.0;                 // Tr[W_opt rho]
    std::array<double, 3> plane_bell{}; // <B_xy>, <B_yz>, <B_xz>
    bool precondition_met = false;      // |<B_ij>| <= 2 in every plane
    std::optional<bool> within;         // only when the precondition holds
};
WitnessInequality witness_inequality(const DensityMatrix &rho);

/// Range of the three plane witness expectations when Tr[W_opt rho] in
/// [lower endpoint, 0].
struct ChshSumBounds {
    double sum = 0.0;            // <W_xy> + <W_yz> + <W_xz>
    double from_optimal = 0.0;   // 6 - 2 sqrt2 (4 Tr[W_opt rho] - 1)
    double lower = 0.0;
    double upper = 0.0;
    bool hypotheses_met = false; // W_opt value in [lower endpoint, 0], all plane witnesses >= 0
    std::optional<bool> within;
};
ChshSumBounds chsh_sum_bounds(const DensityMatrix &rho);
/// Sum of plane witnesses as a function of Tr[W_opt rho].
double plane_witness_sum_from_optimal(double w_opt_value);

/// 3/4 - 1/(2 sqrt2) + sqrt2 w.
double u_bound_from_value(double w_opt_value);
/// Throws NotApplicable unless every plane <B> lies in [-2, 2] and W_opt detects rho.
double u_bound(const DensityMatrix &rho);

/// sum_j c_j [l0_j (m0_j - m1_j) + l1_j (m0_j + m1_j)], the value of <B> for
/// the second-minus pattern on a state with diagonal correlations c.
double theorem1_expression(const MeasurementSetting &s, const Vec3 &c);
/// (theorem1_expression - 2)/8; throws NotApplicable when the witness built
/// from `s` does not detect the state with correlations c.
double result7_snl(const MeasurementSetting &s, const Vec3 &c);

} // namespace qnl
