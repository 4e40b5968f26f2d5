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
#include <string_view>
#include <vector>

#include "qnl/bell.hpp"
#include "qnl/states.hpp"

namespace qnl {

/// Unit directions a, a', b, b', c, c' for the three parties.
class SvetlichnySetting {
  public:
    SvetlichnySetting(const Vec3 &a, const Vec3 &a2, const Vec3 &b, const Vec3 &b2,
                      const Vec3 &c, const Vec3 &c2);
    static SvetlichnySetting normalized(const Vec3 &a, const Vec3 &a2, const Vec3 &b,
                                        const Vec3 &b2, const Vec3 &c, const Vec3 &c2);

    /// Index 0..5 in the order a, a', b, b', c, c'.
    const Vec3 &vec(int k) const { return v_.at(k); }

  private:
    std::array<Vec3, 6> v_;
};

/// a[b(c+c') + b'(c-c')] + a'[b(c-c') - b'(c+c')] as an 8x8 operator.
ComplexMatrix svetlichny_operator(const SvetlichnySetting &s);

/// t(i,j,k) = Tr[rho (s_i x s_j x s_k)], qubits A, B, C.
struct Correlations3 {
    std::array<double, 27> t{};
    double operator()(int i, int j, int k) const { return t[9 * i + 3 * j + k]; }
    double &operator()(int i, int j, int k) { return t[9 * i + 3 * j + k]; }
};
Correlations3 correlation_tensor(const DensityMatrix &rho3);

/// <S_v> from the correlation tensor.
double svetlichny_value(const Correlations3 &t, const SvetlichnySetting &s);

struct SvetlichnyOptimum {
    SvetlichnySetting setting;
    double value;
};

/// Multi-start block ascent over the six directions; returns max |<S_v>|.
SvetlichnyOptimum svetlichny_max(const DensityMatrix &rho3,
                                 const OptimizerOptions &opts = {64, 0x5EEDULL, 5000, 1e-13});

/// Qubit whose Pauli index labels the rows, and the two qubits forming the
/// column index 3 i + k (major, minor).
struct QubitRoles {
    int row = 0;
    int col_major = 1;
    int col_minor = 2;
};

/// 3x9 unfolding of the correlation tensor.
RealMatrix m_matrix(const DensityMatrix &rho3, const QubitRoles &roles = {});
/// 4 times the top singular value of m_matrix(rho3, roles).
double svetlichny_upper_bound(const DensityMatrix &rho3, const QubitRoles &roles = {});
/// Smallest 4 mu_1 over the three single-party unfoldings.
double tightest_svetlichny_bound(const DensityMatrix &rho3);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix &rho2);
/// Residual tangle 4 det(rho_A) - C_AB^2 - C_AC^2 of the pure state.
double tangle(const Canonical3Q &c);

/// Negativity lower bound in terms of concurrence: sqrt((1-C)^2 + C^2) - (1-C).
double negativity_lower_from_concurrence(double c);
/// The inversion: -N + sqrt2 sqrt(N^2 + N).
double concurrence_upper_from_negativity(double n);

/// (2 + sqrt(tau + C^2)) / 3.
double conditioned_fidelity(double tau, double concurrence);
/// 2/3 + sqrt(tau + (sqrt2 sqrt(N^2+N) - N)^2)/3. Throws NotApplicable when
/// both N and tau vanish.
double conditioned_fidelity_upper(const DensityMatrix &rho2, double tau);
/// (3 + M)/6.
double f_nc_lower(const DensityMatrix &rho2);

struct PowerReport {
    double tangle = 0.0;
    double concurrence = 0.0;
    double negativity = 0.0;
    double m = 0.0;
    double l = 0.0; // tau + (sqrt2 sqrt(N^2+N) - N)^2
    double f_c_exact = 0.0;
    double f_c_upper = 0.0;
    double f_nc_lower = 0.0;
    double power_upper = 0.0;          // (1 - M)/6 + sqrt(L)/3
    bool violates_chsh = false;
    std::optional<std::pair<double, double>> window; // (1, 1 + 2 sqrt L), when violated
    bool in_window = false;
    double s_nl = 0.0;                 // (sqrt M - 1)/4 at the optimal setting
    std::optional<double> strength_cap;   // (sqrt(1 + 2 sqrt L) - 1)/4
    std::optional<double> power_via_strength; // sqrt(L)/3 - 4/3 S (1 + 2S)
    std::optional<double> power_cap;      // 1/6 - 4/3 S (1 + 2S), when L < 1/4

    /// Every applicable bound holds.
    bool consistent() const;
};

PowerReport power_bounds(const Canonical3Q &c);

enum class CurveFamily { kMsXY, kMsYZ, kWClass1, kWClass2 };
std::string_view curve_name(CurveFamily f);
std::optional<CurveFamily> curve_from_name(std::string_view name);
/// Default mixing weight per curve (unused for the detected W-class I curve).
double curve_default_q(CurveFamily f);

struct CurvePoint {
    double parameter = 0.0;
    double strength = 0.0;        // from the module oracles
    double strength_closed = 0.0; // closed form
    double sv = 0.0;              // optimizer
    double sv_bound = 0.0;        // tightest 4 mu_1
    std::optional<double> sv_closed;   // analytic value, where known
    std::optional<double> sv_relation; // value implied by strength through the relation
    std::optional<double> sv_printed;  // relation or bound as printed
};

/// Evaluates a curve at each parameter; rejects points outside the legal
/// interval ([0, pi/2) for the maximal slice, [0.335, 0.85] and [0.1, 0.7]
/// for the W-class families).
std::vector<CurvePoint> family_curves(CurveFamily f, const std::vector<double> &grid,
                                      std::optional<double> q = std::nullopt,
                                      const OptimizerOptions &opts = {16, 0x5EEDULL, 2000,
                                                                      1e-12});

/// Maximal-slice cos(theta) that produces strength S on the given curve.
double ms_cos_for_strength(CurveFamily f, double strength, double q);

} // namespace qnl
