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
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "qnl/linalg.hpp"
#include "qnl/states.hpp"

namespace qnl {

/// Tolerance on unit norms of measurement directions.
inline constexpr double kUnitTol = 1e-10;

/// Directions of Alice's observables A0, A1 and Bob's B0, B1.
class MeasurementSetting {
  public:
    /// Throws InvalidInput unless all four vectors are unit within kUnitTol.
    MeasurementSetting(const Vec3 &a0, const Vec3 &a1, const Vec3 &b0, const Vec3 &b1);
    /// Rescales each vector to unit length; rejects zero or non-finite vectors.
    static MeasurementSetting normalized(const Vec3 &a0, const Vec3 &a1, const Vec3 &b0,
                                         const Vec3 &b1);

    const Vec3 &alice(int s) const { return alice_.at(s); }
    const Vec3 &bob(int t) const { return bob_.at(t); }

  private:
    std::array<Vec3, 2> alice_;
    std::array<Vec3, 2> bob_;
};

enum class Plane { kXY, kYZ, kXZ };

inline constexpr std::array<Plane, 3> kAllPlanes{Plane::kXY, Plane::kYZ, Plane::kXZ};

std::pair<int, int> plane_axes(Plane p);
std::string_view plane_name(Plane p);
std::optional<Plane> plane_from_name(std::string_view name);

/// Sign pattern of the CHSH combination.
enum class ChshSign {
    kSecondMinus, // A0B0 - A0B1 + A1B0 + A1B1
    kLastMinus,   // A0B0 + A0B1 + A1B0 - A1B1
};

std::string_view sign_name(ChshSign s);
std::optional<ChshSign> sign_from_name(std::string_view name);
/// Coefficient of A_s x B_t in the combination.
int chsh_coefficient(ChshSign sign, int s, int t);

/// v.sigma for a unit vector v.
ComplexMatrix observable(const Vec3 &v);

ComplexMatrix bell_operator(const MeasurementSetting &s,
                            ChshSign sign = ChshSign::kSecondMinus);

/// A0 = s_i, A1 = s_j, B0 = (s_i + s_j)/sqrt2, B1 = (s_i - s_j)/sqrt2 with
/// the last-minus pattern; the operator is sqrt2 (s_i x s_i + s_j x s_j).
MeasurementSetting plane_setting(Plane p);
ComplexMatrix plane_bell_operator(Plane p);

/// Tr[op rho]; op must be Hermitian with matching dimension.
double expectation(const ComplexMatrix &op, const DensityMatrix &rho);

/// <B> from the correlation matrix: sum_st coeff(s,t) a_s^T T b_t.
double chsh_value(const Eigen::Matrix3d &t, const MeasurementSetting &s,
                  ChshSign sign = ChshSign::kSecondMinus);

/// Sum of the two largest eigenvalues of T^T T.
double horodecki_m(const DensityMatrix &rho);
bool violates_chsh(const DensityMatrix &rho);
/// 2 sqrt(M).
double max_bell_value(const DensityMatrix &rho);

/// 1/2 (1 + <B>/4).
double p_max(const DensityMatrix &rho, const MeasurementSetting &s,
             ChshSign sign = ChshSign::kSecondMinus);
double p_max_plane(const DensityMatrix &rho, Plane p);

struct OptimizerOptions {
    int starts = 32;
    std::uint64_t seed = 0x5EEDULL;
    int max_sweeps = 5000;
    double tolerance = 1e-15;
};

struct SettingOptimum {
    MeasurementSetting setting;
    double value;
};

/// Multi-start block ascent of <B> over the four unit vectors.
SettingOptimum optimize_settings(const DensityMatrix &rho,
                                 ChshSign sign = ChshSign::kSecondMinus,
                                 const OptimizerOptions &opts = {});

/// Unit vector from polar/azimuthal angles.
Vec3 unit_from_angles(double polar, double azimuth);
/// Uniform direction on the sphere from two uniforms in [0,1).
Vec3 unit_from_uniforms(double u, double v);

} // namespace qnl
