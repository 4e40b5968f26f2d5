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
#include "qnl/tripartite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qnl/error.hpp"
#include "qnl/random.hpp"
#include "qnl/strength.hpp"
#include "qnl/witness.hpp"

namespace qnl {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

/// Terms of the Svetlichny polynomial: indices into (a, a', b, b', c, c') and sign.
struct Term {
    int x, y, z, sign;
};
constexpr Term kTerms[8] = {
    {0, 2, 4, +1}, {0, 2, 5, +1}, {0, 3, 4, +1}, {0, 3, 5, -1},
    {1, 2, 4, +1}, {1, 2, 5, -1}, {1, 3, 4, -1}, {1, 3, 5, -1},
};

double contract(const Correlations3 &t, const Vec3 &x, const Vec3 &y, const Vec3 &z) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) v += t(i, j, k) * x[i] * y[j] * z[k];
    return v;
}

/// Contraction leaving the slot `party` (0, 1, 2) free.
Vec3 contract_free(const Correlations3 &t, int party, const Vec3 &u, const Vec3 &w) {
    Vec3 g = Vec3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double tv = t(i, j, k);
                if (party == 0) g[i] += tv * u[j] * w[k];
                else if (party == 1) g[j] += tv * u[i] * w[k];
                else g[k] += tv * u[i] * w[j];
            }
    return g;
}

double polynomial(const Correlations3 &t, const std::array<Vec3, 6> &v) {
    double s = 0.0;
    for (const auto &term : kTerms) s += term.sign * contract(t, v[term.x], v[term.y], v[term.z]);
    return s;
}

/// Partial gradient of the polynomial with respect to vector `e`.
Vec3 block_gradient(const Correlations3 &t, const std::array<Vec3, 6> &v, int e) {
    const int party = e / 2;
    Vec3 g = Vec3::Zero();
    for (const auto &term : kTerms) {
        const int slots[3] = {term.x, term.y, term.z};
        if (slots[party] != e) continue;
        const int o1 = party == 0 ? slots[1] : slots[0];
        const int o2 = party == 2 ? slots[1] : slots[2];
        g += term.sign * contract_free(t, party, v[o1], v[o2]);
    }
    return g;
}

void require_two_qubit(const DensityMatrix &rho) {
    if (rho.dim() != 4) throw InvalidInput("expected a two-qubit state");
}

void require_three_qubit(const DensityMatrix &rho) {
    if (rho.dim() != 8) throw InvalidInput("expected a three-qubit state");
}

} // namespace

SvetlichnySetting::SvetlichnySetting(const Vec3 &a, const Vec3 &a2, const Vec3 &b,
                                     const Vec3 &b2, const Vec3 &c, const Vec3 &c2)
    : v_{a, a2, b, b2, c, c2} {
    for (const auto &x : v_)
        if (std::abs(x.norm() - 1.0) > kUnitTol)
            throw InvalidInput(fmt::format("Svetlichny direction has norm {:.12g}", x.norm()));
}

SvetlichnySetting SvetlichnySetting::normalized(const Vec3 &a, const Vec3 &a2, const Vec3 &b,
                                                const Vec3 &b2, const Vec3 &c,
                                                const Vec3 &c2) {
    auto unit = [](const Vec3 &x) {
        const double n = x.norm();
        if (!std::isfinite(n) || n < 1e-300)
            throw InvalidInput("Svetlichny direction cannot be normalized");
        return Vec3(x / n);
    };
    return {unit(a), unit(a2), unit(b), unit(b2), unit(c), unit(c2)};
}

ComplexMatrix svetlichny_operator(const SvetlichnySetting &s) {
    ComplexMatrix op = ComplexMatrix::Zero(8, 8);
    for (const auto &term : kTerms)
        op += static_cast<double>(term.sign) *
              tensor(observable(s.vec(term.x)), observable(s.vec(term.y)),
                     observable(s.vec(term.z)));
    return op;
}

Correlations3 correlation_tensor(const DensityMatrix &rho3) {
    require_three_qubit(rho3);
    Correlations3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                t(i, j, k) = trace_product_real(
                    rho3.matrix(), tensor(pauli::sigma(i), pauli::sigma(j), pauli::sigma(k)));
    return t;
}

double svetlichny_value(const Correlations3 &t, const SvetlichnySetting &s) {
    std::array<Vec3, 6> v;
    for (int k = 0; k < 6; ++k) v[k] = s.vec(k);
    return polynomial(t, v);
}

SvetlichnyOptimum svetlichny_max(const DensityMatrix &rho3, const OptimizerOptions &opts) {
    if (opts.starts < 1) throw InvalidInput("optimizer needs at least one start");
    const Correlations3 t = correlation_tensor(rho3);
    std::optional<SvetlichnyOptimum> best;
    for (int start = 0; start < opts.starts; ++start) {
        SplitMix rng(opts.seed, static_cast<std::uint64_t>(start));
        std::array<Vec3, 6> v;
        for (auto &x : v) {
            const double u = rng.uniform();
            x = unit_from_uniforms(u, rng.uniform());
        }
        double current = polynomial(t, v);
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            for (int e = 0; e < 6; ++e) {
                const Vec3 g = block_gradient(t, v, e);
                const double n = g.norm();
                if (n > 1e-300) v[e] = g / n;
            }
            const double next = polynomial(t, v);
            const bool done = next - current <= opts.tolerance;
            current = next;
            if (done) break;
        }
        if (!best || current > best->value)
            best = SvetlichnyOptimum{
                SvetlichnySetting::normalized(v[0], v[1], v[2], v[3], v[4], v[5]), current};
    }
    return *best;
}

RealMatrix m_matrix(const DensityMatrix &rho3, const QubitRoles &roles) {
    const std::array<int, 3> r{roles.row, roles.col_major, roles.col_minor};
    auto sorted = r;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2})
        throw InvalidInput(fmt::format("qubit roles ({}, {}, {}) are not a permutation of 0..2",
                                       r[0], r[1], r[2]));
    const Correlations3 t = correlation_tensor(rho3);
    RealMatrix m(3, 9);
    std::array<int, 3> idx{};
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            for (int s = 0; s < 3; ++s) {
                idx[r[0]] = p;
                idx[r[1]] = q;
                idx[r[2]] = s;
                m(p, 3 * q + s) = t(idx[0], idx[1], idx[2]);
            }
    return m;
}

double svetlichny_upper_bound(const DensityMatrix &rho3, const QubitRoles &roles) {
    return 4.0 * singular_values(m_matrix(rho3, roles)).front();
}

double tightest_svetlichny_bound(const DensityMatrix &rho3) {
    double best = svetlichny_upper_bound(rho3, {0, 1, 2});
    best = std::min(best, svetlichny_upper_bound(rho3, {1, 0, 2}));
    best = std::min(best, svetlichny_upper_bound(rho3, {2, 0, 1}));
    return best;
}

double concurrence(const DensityMatrix &rho2) {
    require_two_qubit(rho2);
    // Singular values of V^T (Y x Y) V with rho = V V^dagger equal the square
    // roots of the eigenvalues of rho rho~, without the sqrt loss near zero.
    const auto es = hermitian_eigensystem(rho2.matrix());
    const Eigen::VectorXd w = es.values.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix v = es.vectors * w.asDiagonal();
    const ComplexMatrix tau = v.transpose() * tensor(pauli::y(), pauli::y()) * v;
    const auto s = singular_values(tau);
    return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

double tangle(const Canonical3Q &c) {
    const DensityMatrix rho = canonical_to_state(c);
    const ComplexMatrix ab = partial_trace(rho.matrix(), 2);
    const ComplexMatrix ac = partial_trace(rho.matrix(), 1);
    const ComplexMatrix a = partial_trace(ab, 1);
    const double det_a = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    const double c_ab = concurrence(DensityMatrix::from_matrix(ab));
    const double c_ac = concurrence(DensityMatrix::from_matrix(ac));
    return 4.0 * det_a - c_ab * c_ab - c_ac * c_ac;
}

double negativity_lower_from_concurrence(double c) {
    return std::sqrt((1.0 - c) * (1.0 - c) + c * c) - (1.0 - c);
}

double concurrence_upper_from_negativity(double n) {
    return -n + kSqrt2 * std::sqrt(n * n + n);
}

double conditioned_fidelity(double tau, double c) {
    return (2.0 + std::sqrt(std::max(0.0, tau) + c * c)) / 3.0;
}

double conditioned_fidelity_upper(const DensityMatrix &rho2, double tau) {
    const double n = negativity(rho2);
    if (n <= kEntanglementTol && tau <= 1e-12)
        throw NotApplicable("conditioned fidelity bound needs N > 0 or tau > 0");
    const double cb = concurrence_upper_from_negativity(n);
    return 2.0 / 3.0 + std::sqrt(std::max(0.0, tau) + cb * cb) / 3.0;
}

double f_nc_lower(const DensityMatrix &rho2) { return (3.0 + horodecki_m(rho2)) / 6.0; }

bool PowerReport::consistent() const {
    constexpr double tol = 1e-9;
    if (f_c_exact > f_c_upper + tol) return false;
    if (in_window && power_upper < -tol) return false;
    if (strength_cap && in_window && !(s_nl <= *strength_cap + tol)) return false;
    if (power_via_strength && power_upper > *power_via_strength + tol) return false;
    if (power_cap && !(power_upper < *power_cap + tol)) return false;
    return true;
}

PowerReport power_bounds(const Canonical3Q &c) {
    c.validate();
    const DensityMatrix ab = reduce_to_ab(c);
    PowerReport r;
    r.tangle = tangle(c);
    const double tau = std::max(0.0, r.tangle);
    r.concurrence = concurrence(ab);
    r.negativity = negativity(ab);
    r.m = horodecki_m(ab);
    const double cb = concurrence_upper_from_negativity(r.negativity);
    r.l = tau + cb * cb;
    const double root_l = std::sqrt(r.l);
    r.f_c_exact = conditioned_fidelity(tau, r.concurrence);
    r.f_c_upper = 2.0 / 3.0 + root_l / 3.0;
    r.f_nc_lower = (3.0 + r.m) / 6.0;
    r.power_upper = (1.0 - r.m) / 6.0 + root_l / 3.0;
    r.violates_chsh = r.m > 1.0 + 1e-12;
    if (r.violates_chsh) {
        r.window = std::make_pair(1.0, 1.0 + 2.0 * root_l);
        r.in_window = r.m < r.window->second;
        const double s = (std::sqrt(r.m) - 1.0) / 4.0;
        r.s_nl = s;
        r.strength_cap = (std::sqrt(1.0 + 2.0 * root_l) - 1.0) / 4.0;
        r.power_via_strength = root_l / 3.0 - 4.0 / 3.0 * s * (1.0 + 2.0 * s);
        if (r.l < 0.25) r.power_cap = 1.0 / 6.0 - 4.0 / 3.0 * s * (1.0 + 2.0 * s);
    }
    return r;
}

std::string_view curve_name(CurveFamily f) {
    switch (f) {
    case CurveFamily::kMsXY: return "ms-xy";
    case CurveFamily::kMsYZ: return "ms-yz";
    case CurveFamily::kWClass1: return "wclass1";
    case CurveFamily::kWClass2: return "wclass2";
    }
    return "?";
}

std::optional<CurveFamily> curve_from_name(std::string_view name) {
    for (auto f : {CurveFamily::kMsXY, CurveFamily::kMsYZ, CurveFamily::kWClass1,
                   CurveFamily::kWClass2})
        if (curve_name(f) == name) return f;
    return std::nullopt;
}

double curve_default_q(CurveFamily f) {
    switch (f) {
    case CurveFamily::kMsXY: return 0.3;
    case CurveFamily::kMsYZ: return 0.001;
    case CurveFamily::kWClass2: return 0.6;
    default: return 0.0;
    }
}

double ms_cos_for_strength(CurveFamily f, double s, double q) {
    if (f == CurveFamily::kMsXY) return (1.0 - q) / (4.0 * s + q);
    if (f != CurveFamily::kMsYZ) throw InvalidInput("cosine inversion is defined for ms curves");
    // 8 c S = (2 - sqrt2 + sqrt2 c)(1 - q - q c), a quadratic in c.
    const double a = q * kSqrt2;
    const double b = (1.0 - q) * kSqrt2 - q * (2.0 - kSqrt2) - 8.0 * s;
    const double k = (1.0 - q) * (2.0 - kSqrt2);
    if (a == 0.0) return k / -b;
    return (b + std::sqrt(b * b + 4.0 * a * k)) / (2.0 * a);
}

std::vector<CurvePoint> family_curves(CurveFamily f, const std::vector<double> &grid,
                                      std::optional<double> q_opt,
                                      const OptimizerOptions &opts) {
    const double q = q_opt.value_or(curve_default_q(f));
    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    for (double p : grid) {
        CurvePoint pt;
        pt.parameter = p;
        Canonical3Q c3;
        switch (f) {
        case CurveFamily::kMsXY:
        case CurveFamily::kMsYZ: {
            if (!(p >= 0.0 && p < std::numbers::pi / 2.0))
                throw InvalidInput(fmt::format("theta = {} outside [0, pi/2)", p));
            const double c = std::cos(p);
            const DensityMatrix rho = named_state(Family::kMaximalSlice, p);
            c3 = Canonical3Q::maximal_slice(p);
            pt.sv_closed = 4.0 * std::sqrt(2.0 - c * c);
            if (f == CurveFamily::kMsXY) {
                pt.strength = s_nl_new(rho, w_plane(Plane::kXY), q);
                pt.strength_closed = (1.0 - q * (1.0 + c)) / (4.0 * c);
                if (q == 0.3)
                    pt.sv_printed = 4.0 * std::sqrt(2.0 - 49.0 / 1600.0 /
                                                              std::pow(pt.strength + 3.0 / 40.0, 2));
            } else {
                const double w = 2.0 - kSqrt2 + kSqrt2 * c;
                pt.strength = s_nl_new(rho, w_plane(Plane::kYZ), q);
                pt.strength_closed = -q * w / 8.0 + (1.0 - q) * w / (8.0 * c);
                if (q == 0.001) {
                    const double d = 8.0 * pt.strength - 1.41221;
                    const double u = (-d + std::sqrt(d * d + 0.00330521)) / 0.007;
                    pt.sv_printed = std::sqrt(std::max(0.0, 32.0 - u * u));
                }
            }
            const double cr = ms_cos_for_strength(f, pt.strength, q);
            pt.sv_relation = 4.0 * std::sqrt(2.0 - cr * cr);
            break;
        }
        case CurveFamily::kWClass1: {
            if (!(p >= 0.335 && p <= 0.85))
                throw InvalidInput(fmt::format("lambda0 = {} outside [0.335, 0.85]", p));
            const DensityMatrix rho = named_state(Family::kWClass1, p);
            c3 = Canonical3Q::wclass1(p);
            pt.strength = std::max(-expectation(w_plane(Plane::kXZ), rho) / 8.0, 0.0);
            pt.strength_closed = -(0.840345 - 2.82843 * p * std::sqrt(0.91 - p * p)) / 8.0;
            const double l2 = p * p;
            const double j = 1 - 7.28 * l2 + 21.2496 * l2 * l2 - 29.12 * l2 * l2 * l2 +
                             16 * l2 * l2 * l2 * l2;
            pt.sv_printed = 4.0 * 0.707107 *
                            std::sqrt(1 + 3.64 * l2 - 4 * l2 * l2 + std::sqrt(std::max(0.0, j)));
            break;
        }
        case CurveFamily::kWClass2: {
            if (!(p >= 0.1 && p <= 0.7))
                throw InvalidInput(fmt::format("lambda0 = {} outside [0.1, 0.7]", p));
            const DensityMatrix rho = named_state(Family::kWClass2, p);
            c3 = Canonical3Q::wclass2(p);
            pt.strength = s_nl_new(rho, w_plane(Plane::kXY), q);
            const double r = std::sqrt(51.0 - 100.0 * p * p);
            const double k = 1.02 * p * p + 0.15 * p * r + 0.692965 * p * std::sqrt(0.51 - p * p);
            pt.strength_closed = (1.0 + 2.0 * std::pow(p, 4) - k) / (p * r);
            pt.sv_printed = std::sqrt(16.0 + 33.1546 / pt.strength);
            break;
        }
        }
        const DensityMatrix rho3 = canonical_to_state(c3);
        pt.sv = svetlichny_max(rho3, opts).value;
        pt.sv_bound = tightest_svetlichny_bound(rho3);
        out.push_back(pt);
    }
    return out;
}

} // namespace qnl
