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
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "qnl/linalg.hpp"

namespace qnl {

/// Default tolerance for accepting a matrix as a density matrix.
inline constexpr double kDensityTol = 1e-10;

/// Validated 4x4 or 8x8 density matrix. Construction checks Hermiticity, unit
/// trace and positivity; the stored matrix is exactly Hermitian.
class DensityMatrix {
  public:
    /// Throws InvalidInput with the diagnostics when `m` is not a state.
    static DensityMatrix from_matrix(const ComplexMatrix &m, double tol = kDensityTol);

    const ComplexMatrix &matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    int qubits() const { return m_.rows() == 4 ? 2 : 3; }

  private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Two-qubit state 1/4 [I + a.s x I + I x b.s + sum_j c_j s_j x s_j].
struct PauliDiagonalForm {
    Vec3 a = Vec3::Zero();
    Vec3 b = Vec3::Zero();
    Vec3 c = Vec3::Zero();
};

/// Builds the matrix without any positivity check.
ComplexMatrix pauli_form_matrix(const PauliDiagonalForm &p);
/// Throws InvalidInput naming the offending eigenvalue when not positive.
DensityMatrix from_pauli(const PauliDiagonalForm &p);

/// t_ij = Tr[rho (s_i x s_j)] for a two-qubit state.
Eigen::Matrix3d correlation_matrix(const DensityMatrix &rho);

/// l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>, qubit order
/// A, B, C with C rightmost.
struct Canonical3Q {
    std::array<double, 5> lambda{1.0, 0.0, 0.0, 0.0, 0.0};
    double theta = 0.0;

    /// Throws InvalidInput unless every lambda is in [0,1], theta in [0,pi]
    /// and the squares sum to one within 1e-10.
    void validate() const;

    static Canonical3Q ghz();
    static Canonical3Q maximal_slice(double theta);
    static Canonical3Q wclass1(double lambda0);
    static Canonical3Q wclass2(double lambda0);
};

Eigen::VectorXcd canonical_vector(const Canonical3Q &c);
DensityMatrix canonical_to_state(const Canonical3Q &c);
/// Reduced AB state from the closed-form entries (qubit C traced out).
DensityMatrix reduce_to_ab(const Canonical3Q &c);

enum class Family {
    kRho1,         // Pauli form, weak local field, CHSH-detected
    kRho2,         // Pauli form, entangled but undetected
    kRho3,         // Pauli form, near-singlet
    kRhoX,         // x in [0, 1/3]
    kRhoN,         // a in (0.1, 0.65)
    kMaximalSlice, // theta in [0, pi/2]
    kWClass1,      // lambda0 in [0, 0.953939]
    kWClass2,      // lambda0 in [0.1, 0.7]
    kPhiPlus,
    kMaximallyMixed,
};

struct FamilyInfo {
    Family family;
    std::string_view tag;
    std::string_view parameter_name; // empty when the family has no parameter
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;

    bool has_parameter() const { return !parameter_name.empty(); }
    bool contains(double v) const;
    std::string interval() const;
};

std::span<const FamilyInfo> families();
const FamilyInfo &family_info(Family f);
std::optional<Family> family_from_tag(std::string_view tag);

/// Throws InvalidInput for a missing, superfluous or out-of-range parameter.
DensityMatrix named_state(Family f, std::optional<double> parameter = std::nullopt);

/// The three-qubit pure state whose AB reduction is the family member, for the
/// families defined that way (maximal slice and both W-class families).
std::optional<Canonical3Q> family_purification(Family f, double parameter);

/// |Phi+> = (|00> + |11>)/sqrt2 as a projector.
ComplexMatrix phi_plus_projector();

} // namespace qnl
