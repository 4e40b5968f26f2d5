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
#include "qnl/error.hpp"
#include "qnl/strength.hpp"

using namespace qnl;
using doctest::Approx;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Vec3 to_vec(const std::array<double, 3> &a) { return {a[0], a[1], a[2]}; }

MeasurementSetting random_setting(oracle::Sampler &rng) {
    return {to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit())};
}

double oracle_negativity(const DensityMatrix &rho) {
    const double m = oracle::min_pt_eigenvalue(oracle::from_eigen(rho.matrix()));
    return m < -1e-12 ? -2 * m : 0.0;
}

double oracle_k(const DensityMatrix &rho, const ComplexMatrix &w) {
    const auto r = oracle::from_eigen(rho.matrix());
    const auto prod = oracle::mul(oracle::mul(oracle::from_eigen(w), r), oracle::partial_transpose_b(r));
    return oracle::trace(prod).real() / (4 * oracle_negativity(rho));
}

double k_closed_x(double x) {
    return (1 - 2 * (1 + kSqrt2) * x + 6 * x * x) / (2 * (std::sqrt(72 * x * x - 12 * x + 1) - 1));
}

} // namespace

TEST_CASE("strength from a setting") {
    const auto rho1 = named_state(Family::kRho1);
    CHECK(s_nl(rho1, app::printed_setting_rho1()) == Approx(0.0035).epsilon(1e-3));
    CHECK(s_nl(named_state(Family::kMaximallyMixed), app::printed_setting_rho1()) == 0.0);
    CHECK(s_nl(named_state(Family::kPhiPlus), app::tsirelson_setting()) == Approx((kSqrt2 - 1) / 4));

    oracle::Sampler rng(31);
    for (int k = 0; k < 100; ++k) {
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(rng.density(4, 1 + k % 4)));
        const auto s = random_setting(rng);
        CHECK(s_nl(rho, s) == Approx(s_nl_witness(rho, s)).epsilon(1e-12));
        CHECK(s_nl(rho, s) == Approx(std::max(p_max(rho, s) - 0.75, 0.0)).epsilon(1e-12));
    }
}

TEST_CASE("strength over the planes") {
    CHECK(s_nl_planes(named_state(Family::kPhiPlus)) == Approx((2 * kSqrt2 - 2) / 8));
    CHECK(s_nl_planes(named_state(Family::kRho2)) == 0.0);
    CHECK(s_nl_planes(named_state(Family::kMaximallyMixed)) == 0.0);
}

TEST_CASE("negativity") {
    CHECK(negativity(named_state(Family::kPhiPlus)) == Approx(1.0));
    CHECK(negativity(named_state(Family::kMaximallyMixed)) == 0.0);
    for (double th : {0.2, 0.8, 1.3})
        CHECK(negativity(named_state(Family::kMaximalSlice, th)) ==
              Approx(std::sqrt((1 + std::cos(2 * th)) / 2)).epsilon(1e-12));
    oracle::Sampler rng(32);
    for (int k = 0; k < 100; ++k) {
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(rng.density(4, 1 + k % 4)));
        const double n = negativity(rho);
        CHECK(n == Approx(oracle_negativity(rho)).epsilon(1e-12));
        CHECK((n == 0.0) == (oracle::min_pt_eigenvalue(oracle::from_eigen(rho.matrix())) >= -1e-12));
    }
}

TEST_CASE("K quantity") {
    for (double th : {0.3, std::numbers::pi / 3, 1.2}) {
        const double c = std::cos(th);
        const auto ms = named_state(Family::kMaximalSlice, th);
        CHECK(k_quantity(ms, w_plane(Plane::kXY)) == Approx(1 / (4 * c)).epsilon(1e-12));
        CHECK(k_quantity(ms, w_plane(Plane::kYZ)) ==
              Approx((2 - kSqrt2 + kSqrt2 * c) / (8 * c)).epsilon(1e-12));
        CHECK(k_quantity(ms, w_plane(Plane::kXY)) == Approx(oracle_k(ms, w_plane(Plane::kXY))));
    }
    for (int k = 1; k <= 40; ++k) {
        const double x = 1.0 / 6 + (1.0 / 6) * k / 40;
        const auto rho = named_state(Family::kRhoX, x);
        CHECK(k_quantity(rho, w_plane(Plane::kXY)) == Approx(oracle_k(rho, w_plane(Plane::kXY))).epsilon(1e-12));
        CHECK(k_quantity(rho, w_plane(Plane::kXY)) == Approx(k_closed_x(x)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(k_quantity(named_state(Family::kMaximallyMixed), w_plane(Plane::kXY)), NotApplicable);
    CHECK_THROWS_AS(k_quantity(named_state(Family::kRhoX, 0.1), w_plane(Plane::kXY)), NotApplicable);
}

TEST_CASE("q threshold") {
    const auto ms = named_state(Family::kMaximalSlice, std::numbers::pi / 3);
    CHECK(q_upper_bound(ms, w_plane(Plane::kXY)) == Approx(2.0 / 3.0));
    for (double th : {0.1, 0.7, 1.5})
        CHECK(q_upper_bound(named_state(Family::kMaximalSlice, th), w_plane(Plane::kXY)) ==
              Approx(1 / (1 + std::cos(th))).epsilon(1e-12));
    CHECK(q_upper_bound(named_state(Family::kMaximalSlice, 1.5707), w_plane(Plane::kXY)) ==
          Approx(1.0).epsilon(1e-4));

    std::vector<double> th;
    for (int k = 1; k <= 200; ++k) {
        const double x = 1.0 / 6 + (1.0 / 6) * k / 200;
        const double q = q_upper_bound(named_state(Family::kRhoX, x), w_plane(Plane::kXY));
        CHECK(q > 0.55);
        CHECK(q <= 1.0);
        th.push_back(q);
    }
    CHECK(uniform_safe_q(th) == Approx(0.551979).epsilon(1e-5));
    CHECK_THROWS_AS(q_upper_bound(named_state(Family::kRho3), w_opt()), NotApplicable);
}

TEST_CASE("mixed strength") {
    for (double th : {0.4, 1.0, 1.4}) {
        const double c = std::cos(th);
        const auto ms = named_state(Family::kMaximalSlice, th);
        CHECK(s_nl_new(ms, w_plane(Plane::kXY), 0.3) == Approx((0.7 - 0.3 * c) / (4 * c)).epsilon(1e-12));
        const double w = 2 - kSqrt2 + kSqrt2 * c;
        CHECK(s_nl_new(ms, w_plane(Plane::kYZ), 0.001) ==
              Approx(-0.001 * w / 8 + 0.999 * w / (8 * c)).epsilon(1e-12));
        CHECK(s_nl_new(ms, w_plane(Plane::kXY), 0.0) == Approx(k_quantity(ms, w_plane(Plane::kXY))));
    }
    const auto ms = named_state(Family::kMaximalSlice, 1.0);
    CHECK_THROWS_AS(s_nl_new(ms, w_plane(Plane::kXY), 0.9), InvalidInput);
    CHECK_THROWS_AS(s_nl_new(ms, w_plane(Plane::kXY), -0.1), InvalidInput);

    oracle::Sampler rng(33);
    int tested = 0;
    for (int k = 0; k < 400 && tested < 100; ++k) {
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(rng.density(4, 1 + k % 3)));
        if (negativity(rho) <= kEntanglementTol) continue;
        for (Plane p : kAllPlanes) {
            const auto w = w_plane(p);
            if (detects(w, rho) || k_quantity(rho, w) <= 0) continue;
            const double qb = q_upper_bound(rho, w);
            CHECK(s_nl_new(rho, w, rng.uniform(0, qb - 1e-9)) > 0.0);
            ++tested;
        }
    }
    CHECK(tested > 20);
}

TEST_CASE("bound suite") {
    const auto r1 = bound_suite(named_state(Family::kRho1), app::printed_setting_rho1());
    CHECK(r1.detected);
    CHECK(r1.all_pass());
    bool saw = false;
    for (const auto &b : r1.bounds)
        if (b.name == "strength vs Horodecki") {
            saw = true;
            CHECK(b.lhs == Approx(0.0035).epsilon(1e-3));
            CHECK(b.rhs == Approx((std::sqrt(1.6021) - 1) / 4));
        }
    CHECK(saw);

    const auto ms = bound_suite(named_state(Family::kMaximalSlice, std::numbers::pi / 3),
                                plane_setting(Plane::kXY), ChshSign::kLastMinus, 0.3);
    CHECK_FALSE(ms.detected);
    CHECK(ms.m == Approx(1.25));
    REQUIRE(ms.s_nl_new);
    CHECK(*ms.s_nl_new == Approx(0.275));
    CHECK(ms.all_pass());

    const auto phi = bound_suite(named_state(Family::kPhiPlus), app::tsirelson_setting());
    CHECK(phi.p_max == Approx(0.5 * (1 + kSqrt2 / 2)));
    CHECK(phi.all_pass());

    oracle::Sampler rng(34);
    int detected = 0;
    for (int k = 0; k < 200; ++k) {
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(rng.density(4, 1 + k % 2)));
        const auto best = optimize_settings(rho);
        const auto rep = bound_suite(rho, k % 2 ? best.setting : random_setting(rng));
        CHECK(rep.all_pass());
        if (rep.detected) {
            ++detected;
            CHECK(rep.m >= std::pow(1 - rep.witness_value / 2, 2) - 1e-9);
            CHECK(rep.s_nl < (kSqrt2 - 1) / 4 + 1e-9);
        }
    }
    CHECK(detected > 10);
}
