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
#include <doctest.h>

#include <numbers>

#include "../oracles.hpp"
#include "qnl/error.hpp"
#include "qnl/strength.hpp"
#include "qnl/tripartite.hpp"

using namespace qnl;
using doctest::Approx;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Vec3 to_vec(const std::array<double, 3> &a) { return {a[0], a[1], a[2]}; }

Vec3 in_plane(double phi) { return {std::cos(phi), std::sin(phi), 0.0}; }

oracle::Mat obs(const Vec3 &v) {
    const double a[3] = {v(0), v(1), v(2)};
    return oracle::observable(a);
}

/// a[b(c+c') + b'(c-c')] + a'[b(c-c') - b'(c+c')] term by term.
oracle::Mat oracle_svetlichny(const SvetlichnySetting &s) {
    const auto A = obs(s.vec(0)), A2 = obs(s.vec(1)), B = obs(s.vec(2)), B2 = obs(s.vec(3));
    const auto Cp = oracle::add(obs(s.vec(4)), obs(s.vec(5)));
    const auto Cm = oracle::add(obs(s.vec(4)), obs(s.vec(5)), -1.0);
    oracle::Mat m = oracle::kron(oracle::kron(A, B), Cp);
    m = oracle::add(m, oracle::kron(oracle::kron(A, B2), Cm));
    m = oracle::add(m, oracle::kron(oracle::kron(A2, B), Cm));
    m = oracle::add(m, oracle::kron(oracle::kron(A2, B2), Cp), -1.0);
    return m;
}

std::vector<oracle::cd> canonical(const Canonical3Q &c) {
    std::vector<oracle::cd> p(8);
    p[0] = c.lambda[0];
    p[4] = c.lambda[1] * std::polar(1.0, c.theta);
    p[5] = c.lambda[2];
    p[6] = c.lambda[3];
    p[7] = c.lambda[4];
    return p;
}

Canonical3Q random_canonical(oracle::Sampler &rng) {
    Canonical3Q c;
    double n = 0.0;
    for (auto &v : c.lambda) {
        v = std::abs(rng.normal());
        n += v * v;
    }
    for (auto &v : c.lambda) v /= std::sqrt(n);
    c.theta = rng.uniform(0.0, std::numbers::pi);
    return c;
}

SvetlichnySetting random_svetlichny(oracle::Sampler &rng) {
    return {to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit()),
            to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit())};
}

} // namespace

TEST_CASE("Svetlichny operator") {
    const Vec3 z(0, 0, 1);
    CHECK(svetlichny_operator({z, z, z, z, z, z}).cwiseAbs().maxCoeff() == 0.0);

    oracle::Sampler rng(41);
    const auto mixed = DensityMatrix::from_matrix(ComplexMatrix::Identity(8, 8) / 8.0);
    for (int k = 0; k < 20; ++k) {
        const auto s = random_svetlichny(rng);
        const ComplexMatrix op = svetlichny_operator(s);
        CHECK(oracle::max_abs_diff(oracle::from_eigen(op), oracle_svetlichny(s)) < 1e-14);
        const auto ev = hermitian_eigenvalues(op);
        CHECK(std::max(-ev.front(), ev.back()) <= 4 * kSqrt2 + 1e-9);
        CHECK(std::abs(expectation(op, mixed)) < 1e-15);
        const auto rho = canonical_to_state(random_canonical(rng));
        CHECK(svetlichny_value(correlation_tensor(rho), s) == Approx(expectation(op, rho)).epsilon(1e-12));
    }
}

TEST_CASE("GHZ reaches 4 sqrt2") {
    const auto ghz = canonical_to_state(Canonical3Q::ghz());
    const SvetlichnySetting s(in_plane(0), in_plane(std::numbers::pi / 2), in_plane(-std::numbers::pi / 4),
                              in_plane(std::numbers::pi / 4), in_plane(0), in_plane(std::numbers::pi / 2));
    CHECK(std::abs(oracle::expect(oracle_svetlichny(s), oracle::from_eigen(ghz.matrix()))) ==
          Approx(4 * kSqrt2));
    CHECK(svetlichny_max(ghz).value == Approx(4 * kSqrt2).epsilon(1e-6));
    CHECK(svetlichny_upper_bound(ghz) == Approx(4 * kSqrt2).epsilon(1e-12));
}

TEST_CASE("Svetlichny optimum on the maximal slice") {
    for (int k = 0; k < 20; ++k) {
        const double th = (std::numbers::pi / 2) * k / 20.0;
        const double c = std::cos(th);
        const auto rho = canonical_to_state(Canonical3Q::maximal_slice(th));
        CHECK(svetlichny_max(rho).value == Approx(4 * std::sqrt(2 - c * c)).epsilon(1e-5));
    }
    const auto product = canonical_to_state({});
    CHECK(svetlichny_max(product).value <= 4 + 1e-9);
}

TEST_CASE("correlation unfolding") {
    const auto ghz = canonical_to_state(Canonical3Q::ghz());
    const auto g = oracle::from_eigen(ghz.matrix());
    for (const QubitRoles roles : {QubitRoles{0, 1, 2}, QubitRoles{2, 0, 1}, QubitRoles{1, 2, 0}}) {
        const RealMatrix m = m_matrix(ghz, roles);
        std::array<int, 3> idx{};
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
                for (int s = 0; s < 3; ++s) {
                    idx[roles.row] = p;
                    idx[roles.col_major] = q;
                    idx[roles.col_minor] = s;
                    const auto op = oracle::kron(oracle::kron(oracle::pauli(idx[0]), oracle::pauli(idx[1])),
                                                 oracle::pauli(idx[2]));
                    CHECK(m(p, 3 * q + s) == Approx(oracle::expect(op, g)).epsilon(1e-14));
                }
    }
    const RealMatrix mg = m_matrix(ghz);
    CHECK(mg(0, 0) == Approx(1.0));
    CHECK(mg(0, 4) == Approx(-1.0));
    CHECK(mg(1, 1) == Approx(-1.0));
    CHECK(mg(1, 3) == Approx(-1.0));

    const RealMatrix m0 = m_matrix(canonical_to_state({}));
    CHECK(m0(2, 8) == Approx(1.0));
    CHECK(m0.cwiseAbs().sum() == Approx(1.0));
    CHECK(m_matrix(DensityMatrix::from_matrix(ComplexMatrix::Identity(8, 8) / 8.0)).isZero(1e-15));
    CHECK_THROWS_AS(m_matrix(ghz, {0, 0, 1}), InvalidInput);

    const auto psi2 = canonical_to_state(Canonical3Q::wclass2(0.1));
    CHECK(svetlichny_upper_bound(psi2, {2, 0, 1}) / 4 == Approx(1.0198).epsilon(1e-4));
    std::vector<std::vector<double>> rows(3, std::vector<double>(9));
    const RealMatrix mc = m_matrix(psi2, {2, 0, 1});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 9; ++j) rows[i][j] = mc(i, j);
    CHECK(oracle::singular_values(rows)[0] == Approx(singular_values(mc)[0]).epsilon(1e-12));
}

TEST_CASE("Svetlichny sandwich on random canonical states") {
    oracle::Sampler rng(42);
    for (int k = 0; k < 50; ++k) {
        const auto c = random_canonical(rng);
        const auto rho = canonical_to_state(c);
        const double best = svetlichny_max(rho).value;
        CHECK(best <= tightest_svetlichny_bound(rho) + 1e-6);
        CHECK(best <= svetlichny_upper_bound(rho) + 1e-6);
        const auto t = correlation_tensor(rho);
        for (int j = 0; j < 100; ++j)
            CHECK(std::abs(svetlichny_value(t, random_svetlichny(rng))) <= best + 1e-9);
    }
}

TEST_CASE("concurrence and the negativity relations") {
    CHECK(concurrence(named_state(Family::kPhiPlus)) == Approx(1.0));
    CHECK(concurrence(named_state(Family::kMaximallyMixed)) == Approx(0.0));
    for (double th : {0.2, 0.9, 1.4}) {
        const auto ms = named_state(Family::kMaximalSlice, th);
        CHECK(concurrence(ms) == Approx(std::cos(th)).epsilon(1e-10));
        CHECK(concurrence(ms) == Approx(oracle::x_state_concurrence(oracle::from_eigen(ms.matrix()))).epsilon(1e-10));
    }
    for (double x : {0.1, 0.2, 0.3}) {
        const auto r = named_state(Family::kRhoX, x);
        CHECK(concurrence(r) == Approx(oracle::x_state_concurrence(oracle::from_eigen(r.matrix()))).epsilon(1e-10));
    }
    oracle::Sampler rng(43);
    for (int k = 0; k < 200; ++k) {
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(rng.density(4, 1 + k % 4)));
        const double c = concurrence(rho), n = negativity(rho);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
        CHECK(n >= negativity_lower_from_concurrence(c) - 1e-9);
        CHECK(c <= concurrence_upper_from_negativity(n) + 1e-9);
    }
}

TEST_CASE("tangle") {
    CHECK(tangle(Canonical3Q::ghz()) == Approx(1.0));
    for (double th : {0.3, 1.0})
        CHECK(tangle(Canonical3Q::maximal_slice(th)) == Approx(std::pow(std::sin(th), 2)).epsilon(1e-10));
    for (double l : {0.2, 0.5}) {
        CHECK(tangle(Canonical3Q::wclass1(l)) == Approx(0.0).epsilon(1e-10).scale(1));
        CHECK(tangle(Canonical3Q::wclass2(l)) == Approx(0.0).epsilon(1e-10).scale(1));
    }
    oracle::Sampler rng(44);
    for (int k = 0; k < 100; ++k) {
        const auto c = random_canonical(rng);
        const double t = tangle(c);
        CHECK(t >= -1e-10);
        CHECK(t == Approx(oracle::three_tangle(canonical(c))).epsilon(1e-10).scale(1));
    }
}

TEST_CASE("teleportation fidelities") {
    const auto ghz_red = reduce_to_ab(Canonical3Q::ghz());
    CHECK(conditioned_fidelity(1.0, 0.0) == Approx(1.0));
    CHECK(conditioned_fidelity_upper(ghz_red, 1.0) == Approx(1.0));
    const auto ms = reduce_to_ab(Canonical3Q::maximal_slice(std::numbers::pi / 3));
    CHECK(conditioned_fidelity(0.75, 0.5) == Approx(1.0));
    CHECK(conditioned_fidelity_upper(ms, 0.75) >= 1.0 - 1e-12);
    CHECK_THROWS_AS(conditioned_fidelity_upper(named_state(Family::kMaximallyMixed), 0.0), NotApplicable);
    CHECK(f_nc_lower(ms) == Approx((3 + 1.25) / 6));
    CHECK(f_nc_lower(named_state(Family::kMaximallyMixed)) == Approx(0.5));
}

TEST_CASE("power bounds") {
    const auto g = power_bounds(Canonical3Q::ghz());
    CHECK(g.l == Approx(1.0));
    CHECK(g.m == Approx(1.0));
    CHECK(g.power_upper == Approx(1.0 / 3.0));
    CHECK_FALSE(g.violates_chsh);
    CHECK_FALSE(g.strength_cap);
    CHECK(g.consistent());

    const auto m = power_bounds(Canonical3Q::maximal_slice(std::numbers::pi / 4));
    CHECK(m.negativity == Approx(kSqrt2 / 2));
    CHECK(m.tangle == Approx(0.5));
    CHECK(m.m == Approx(1.5));
    REQUIRE(m.window);
    CHECK(m.window->second == Approx(1 + 2 * std::sqrt(m.l)));
    CHECK(m.in_window);
    CHECK(m.consistent());

    const auto p = power_bounds({});
    CHECK_FALSE(p.violates_chsh);
    CHECK_FALSE(p.power_cap);
    CHECK(p.consistent());

    oracle::Sampler rng(45);
    for (int k = 0; k < 200; ++k) {
        const auto r = power_bounds(random_canonical(rng));
        CHECK(r.consistent());
        CHECK(r.f_c_exact <= r.f_c_upper + 1e-12);
        CHECK(r.l == Approx(r.tangle + std::pow(kSqrt2 * std::sqrt(r.negativity * r.negativity + r.negativity) -
                                                    r.negativity,
                                                2))
                         .epsilon(1e-12));
        if (r.in_window) CHECK(r.power_upper >= -1e-12);
    }
}

TEST_CASE("family curves") {
    const auto xy = family_curves(CurveFamily::kMsXY, {0.3, 1.0, 1.4});
    for (const auto &p : xy) {
        CHECK(p.strength == Approx(p.strength_closed).epsilon(1e-9));
        CHECK(*p.sv_relation == Approx(*p.sv_closed).epsilon(1e-9));
        CHECK(*p.sv_printed == Approx(*p.sv_closed).epsilon(1e-9));
        CHECK(p.sv == Approx(*p.sv_closed).epsilon(1e-4));
        CHECK(p.sv > 4);
    }
    for (const auto &p : family_curves(CurveFamily::kMsYZ, {0.3, 1.0})) {
        CHECK(p.strength == Approx(p.strength_closed).epsilon(1e-9));
        CHECK(*p.sv_relation == Approx(*p.sv_closed).epsilon(1e-9));
    }
    for (double s : {0.3, 0.5, 0.69}) {
        const double c = ms_cos_for_strength(CurveFamily::kMsYZ, s, 0.001);
        CHECK(s_nl_new(named_state(Family::kMaximalSlice, std::acos(c)), w_plane(Plane::kYZ), 0.001) ==
              Approx(s).epsilon(1e-10));
    }
    CHECK_THROWS_AS(family_curves(CurveFamily::kMsXY, {std::numbers::pi / 2}), InvalidInput);
    CHECK_THROWS_AS(family_curves(CurveFamily::kWClass1, {0.3}), InvalidInput);
    CHECK_THROWS_AS(family_curves(CurveFamily::kWClass2, {0.75}), InvalidInput);
    const auto w1 = family_curves(CurveFamily::kWClass1, {0.335, 0.5, 0.85});
    for (const auto &p : w1) CHECK(p.strength == Approx(p.strength_closed).epsilon(1e-6));
    const auto w2 = family_curves(CurveFamily::kWClass2, {0.1, 0.5137931034482759, 0.7});
    CHECK(w2[0].strength == Approx(1.18077).epsilon(1e-5));
    CHECK(w2[1].strength == Approx(0.122136).epsilon(1e-5));
    CHECK(w2[2].strength == Approx(0.771057).epsilon(1e-5));
    for (const auto &p : w2) CHECK(p.sv == Approx(4.0).epsilon(1e-6));
    CHECK(curve_from_name(curve_name(CurveFamily::kWClass2)) == CurveFamily::kWClass2);
}
