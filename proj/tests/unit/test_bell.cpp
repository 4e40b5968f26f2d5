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
#include "app/state_io.hpp"
#include "qnl/bell.hpp"
#include "qnl/error.hpp"

using namespace qnl;
using doctest::Approx;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct RawSetting {
    double v[4][3];
};

RawSetting raw(const MeasurementSetting &s) {
    RawSetting r{};
    for (int k = 0; k < 3; ++k) {
        r.v[0][k] = s.alice(0)(k);
        r.v[1][k] = s.alice(1)(k);
        r.v[2][k] = s.bob(0)(k);
        r.v[3][k] = s.bob(1)(k);
    }
    return r;
}

oracle::Mat oracle_bell(const MeasurementSetting &s, bool last_minus = false) {
    const auto r = raw(s);
    return oracle::chsh(r.v[0], r.v[1], r.v[2], r.v[3], last_minus);
}

Vec3 to_vec(const std::array<double, 3> &a) { return {a[0], a[1], a[2]}; }

MeasurementSetting random_setting(oracle::Sampler &rng) {
    return {to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit())};
}

DensityMatrix random_state(oracle::Sampler &rng, int rank = 4) {
    return DensityMatrix::from_matrix(oracle::to_eigen(rng.density(4, rank)));
}

} // namespace

TEST_CASE("observables") {
    CHECK(observable({1, 0, 0}) == pauli::x());
    CHECK(observable({0, 0, 1}) == pauli::z());
    CHECK_THROWS_AS(observable({0.8, 0.4, 0.447}), InvalidInput);
    const Vec3 b0 = Vec3(0.8, 0.4, 0.447).normalized();
    const auto w = hermitian_eigenvalues(observable(b0));
    CHECK(w[0] == Approx(-1.0));
    CHECK(w[1] == Approx(1.0));
    CHECK(std::abs(observable(b0).trace()) < 1e-15);
}

TEST_CASE("measurement settings reject non-unit vectors") {
    CHECK_THROWS_AS(MeasurementSetting({1, 0, 0}, {0, 1, 0}, {0.8, 0.4, 0.447}, {0, 0, 1}),
                    InvalidInput);
    CHECK_THROWS_AS(MeasurementSetting::normalized({1, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 0, 0}),
                    InvalidInput);
    const auto s = MeasurementSetting::normalized({2, 0, 0}, {0, 3, 0}, {0, 0, 1}, {1, 1, 0});
    CHECK(s.bob(1).norm() == Approx(1.0));
}

TEST_CASE("Bell operators") {
    const Vec3 x(1, 0, 0), y(0, 1, 0), z(0, 0, 1);
    const MeasurementSetting s1(x, y, (x + y) / kSqrt2, (x - y) / kSqrt2);
    const ComplexMatrix b = bell_operator(s1, ChshSign::kLastMinus);
    CHECK(oracle::max_abs_diff(oracle::from_eigen(b), oracle_bell(s1, true)) < 1e-15);
    auto w = hermitian_eigenvalues(b);
    CHECK(w[0] == Approx(-2 * kSqrt2));
    CHECK(w[1] == Approx(0.0));
    CHECK(w[2] == Approx(0.0));
    CHECK(w[3] == Approx(2 * kSqrt2));

    const MeasurementSetting zz(z, z, z, z);
    CHECK((bell_operator(zz) - 2.0 * tensor(pauli::z(), pauli::z())).cwiseAbs().maxCoeff() < 1e-15);

    oracle::Sampler rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_setting(rng);
        for (bool lm : {false, true}) {
            const ComplexMatrix op = bell_operator(s, lm ? ChshSign::kLastMinus : ChshSign::kSecondMinus);
            CHECK(oracle::max_abs_diff(oracle::from_eigen(op), oracle_bell(s, lm)) < 1e-14);
            const auto ev = hermitian_eigenvalues(op);
            CHECK(std::max(-ev.front(), ev.back()) <= 2 * kSqrt2 + 1e-9);
        }
    }
}

TEST_CASE("worked example setting on rho1") {
    const auto rho1 = named_state(Family::kRho1);
    const auto s = app::printed_setting_rho1();
    const double b = expectation(bell_operator(s), rho1);
    CHECK(b == Approx(oracle::expect(oracle_bell(s), oracle::from_eigen(rho1.matrix()))));
    CHECK(b == Approx(2.028).epsilon(1e-3));
    CHECK(p_max(rho1, s) == Approx(0.5 * (1 + b / 4)));
    CHECK(p_max(rho1, s) == Approx(0.7535).epsilon(2e-4));
}

TEST_CASE("plane operators") {
    for (Plane p : kAllPlanes) {
        const auto [i, j] = plane_axes(p);
        const ComplexMatrix ref =
            kSqrt2 * (tensor(pauli::sigma(i), pauli::sigma(i)) + tensor(pauli::sigma(j), pauli::sigma(j)));
        CHECK((plane_bell_operator(p) - ref).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((bell_operator(plane_setting(p), ChshSign::kLastMinus) - ref).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK(plane_from_name(plane_name(p)) == p);
    }
    const auto phi = named_state(Family::kPhiPlus);
    CHECK(std::abs(expectation(plane_bell_operator(Plane::kXY), phi)) < 1e-15);

    const auto rho3 = named_state(Family::kRho3);
    CHECK(expectation(plane_bell_operator(Plane::kXY), rho3) == Approx(-1.9799).epsilon(5e-4));
    CHECK(expectation(plane_bell_operator(Plane::kXZ), rho3) == Approx(-1.93747).epsilon(5e-4));
    for (double a : {0.2, 0.4, 0.6}) {
        const auto rn = named_state(Family::kRhoN, a);
        CHECK(expectation(plane_bell_operator(Plane::kYZ), rn) == Approx(-1.65416).epsilon(5e-4));
        CHECK(expectation(plane_bell_operator(Plane::kXY), rn) == Approx(-1.41987).epsilon(5e-4));
    }
    CHECK(p_max_plane(named_state(Family::kMaximalSlice, 0.4), Plane::kXY) == Approx(0.5));
    const double x = 0.3;
    CHECK(p_max_plane(named_state(Family::kRhoX, x), Plane::kXY) ==
          Approx(0.75 + (4 * kSqrt2 * x - 2) / 8));
    for (Plane p : kAllPlanes)
        CHECK(p_max_plane(named_state(Family::kMaximallyMixed), p) == Approx(0.5));
}

TEST_CASE("expectation checks") {
    const auto mixed = named_state(Family::kMaximallyMixed);
    CHECK(expectation(ComplexMatrix::Identity(4, 4), mixed) == Approx(1.0));
    CHECK_THROWS_AS(expectation(ComplexMatrix::Identity(8, 8), mixed), InvalidInput);
    ComplexMatrix nh = ComplexMatrix::Zero(4, 4);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(expectation(nh, mixed), InvalidInput);
}

TEST_CASE("Horodecki quantity") {
    CHECK(horodecki_m(named_state(Family::kPhiPlus)) == Approx(2.0));
    CHECK(horodecki_m(named_state(Family::kRho2)) == Approx(0.74));
    CHECK(horodecki_m(named_state(Family::kRho1)) == Approx(1.6021));
    CHECK(max_bell_value(named_state(Family::kRho1)) == Approx(2 * std::sqrt(1.6021)));
    CHECK(max_bell_value(named_state(Family::kPhiPlus)) == Approx(2 * kSqrt2));
    CHECK(max_bell_value(named_state(Family::kMaximallyMixed)) == Approx(0.0));
    CHECK(violates_chsh(named_state(Family::kRho1)));
    CHECK_FALSE(violates_chsh(named_state(Family::kRho2)));

    oracle::Sampler rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rho = random_state(rng, 1 + trial % 4);
        CHECK(horodecki_m(rho) == Approx(oracle::horodecki_m(oracle::from_eigen(rho.matrix()))).epsilon(1e-12));
    }
}

TEST_CASE("Lemma-type bounds on random settings") {
    oracle::Sampler rng(4);
    for (int st = 0; st < 20; ++st) {
        const auto rho = random_state(rng, 1 + st % 4);
        const double cap = 0.5 * (1 + max_bell_value(rho) / 4);
        const Eigen::Matrix3d t = correlation_matrix(rho);
        for (int k = 0; k < 200; ++k) {
            const auto s = random_setting(rng);
            const double p = p_max(rho, s);
            CHECK(p <= cap + 1e-9);
            CHECK(p <= 0.5 * (1 + 1 / kSqrt2) + 1e-9);
            CHECK(chsh_value(t, s) == Approx(expectation(bell_operator(s), rho)).epsilon(1e-12));
        }
    }
    // product states never exceed the local bound
    for (int st = 0; st < 20; ++st) {
        const auto a = rng.unit(), b = rng.unit();
        oracle::Mat ra = oracle::scale(oracle::add(oracle::eye(2), oracle::observable(a.data())), 0.5);
        oracle::Mat rb = oracle::scale(oracle::add(oracle::eye(2), oracle::observable(b.data())), 0.5);
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(oracle::kron(ra, rb)));
        for (int k = 0; k < 50; ++k)
            CHECK(std::abs(expectation(bell_operator(random_setting(rng)), rho)) <= 2 + 1e-9);
    }
}

TEST_CASE("setting optimizer reaches the Horodecki value") {
    CHECK(optimize_settings(named_state(Family::kPhiPlus)).value == Approx(2 * kSqrt2).epsilon(1e-6));
    CHECK(optimize_settings(named_state(Family::kRho2)).value == Approx(2 * std::sqrt(0.74)).epsilon(1e-6));
    CHECK(optimize_settings(named_state(Family::kMaximalSlice, std::numbers::pi / 3)).value ==
          Approx(std::sqrt(5.0)).epsilon(1e-6));

    oracle::Sampler rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_state(rng, 1 + trial % 4);
        const auto best = optimize_settings(rho);
        CHECK(best.value <= max_bell_value(rho) + 1e-6);
        CHECK(best.value >= max_bell_value(rho) - 1e-6);
        CHECK(expectation(bell_operator(best.setting), rho) == Approx(best.value).epsilon(1e-10));
        const auto again = optimize_settings(rho);
        CHECK(again.value == best.value);
    }
}

TEST_CASE("sign patterns") {
    CHECK(sign_from_name(sign_name(ChshSign::kLastMinus)) == ChshSign::kLastMinus);
    CHECK(chsh_coefficient(ChshSign::kSecondMinus, 0, 1) == -1);
    CHECK(chsh_coefficient(ChshSign::kLastMinus, 1, 1) == -1);
    CHECK_FALSE(sign_from_name("other"));
}
