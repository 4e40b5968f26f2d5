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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnl/witness.hpp"

namespace qnl {

/// Negativity below this counts as PPT.
inline constexpr double kEntanglementTol = 1e-12;

/// max(P_max - 3/4, 0) from the game form.
double s_nl(const DensityMatrix &rho, const MeasurementSetting &s,
            ChshSign sign = ChshSign::kSecondMinus);
/// max(-Tr[W rho]/8, 0) from the witness form.
double s_nl_witness(const DensityMatrix &rho, const MeasurementSetting &s,
                    ChshSign sign = ChshSign::kSecondMinus);
/// Largest plane excess P_ij - 3/4, floored at zero.
double s_nl_planes(const DensityMatrix &rho);

/// -2 lambda_min(rho^{T_B}); exactly 0 when lambda_min >= -1e-12.
double negativity(const DensityMatrix &rho);

/// Tr[W rho rho^{T_B}] / (4 N). Throws NotApplicable for PPT input.
double k_quantity(const DensityMatrix &rho, const ComplexMatrix &w);

/// Game probability attached to a witness: 3/4 - Tr[W rho]/8.
double p_from_witness(const DensityMatrix &rho, const ComplexMatrix &w);

/// K / (3/4 - P + K). Throws NotApplicable in the detection regime (P > 3/4)
/// or when K <= 0 (no positive mixing weight exists).
double q_upper_bound(const DensityMatrix &rho, const ComplexMatrix &w);
/// A single q admissible for every threshold in the list (their minimum).
double uniform_safe_q(std::span<const double> thresholds);

/// q (P - 3/4) + (1 - q) K. Throws InvalidInput unless 0 <= q < q_upper_bound,
/// NotApplicable when K <= 0 (measure inconclusive) or the state is PPT.
double s_nl_new(const DensityMatrix &rho, const ComplexMatrix &w, double q);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = false;
    bool pass = false; // lhs <= rhs within tolerance; meaningful when applicable
};

struct StrengthReport {
    double m = 0.0;
    double bell_value = 0.0;
    double witness_value = 0.0;
    double p_max = 0.0;
    double s_nl = 0.0;
    double negativity = 0.0;
    bool detected = false;
    std::optional<double> k;
    std::optional<double> q_upper;
    std::optional<double> s_nl_new;
    std::vector<BoundCheck> bounds;

    bool all_pass() const;
};

/// Instantiates the game-probability, witness, and mixed-measure bounds for a
/// state and setting. q is used by the non-detection branch only.
StrengthReport bound_suite(const DensityMatrix &rho, const MeasurementSetting &s,
                           ChshSign sign = ChshSign::kSecondMinus,
                           std::optional<double> q = std::nullopt);

} // namespace qnl
