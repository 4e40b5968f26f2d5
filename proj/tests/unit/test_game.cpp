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

#include <map>
#include <numbers>

#include "../oracles.hpp"
#include "app/state_io.hpp"
#include "qnl/error.hpp"
#include "qnl/game.hpp"

using namespace qnl;
using app::printed_setting_rho1;
using app::tsirelson_setting;
using doctest::Approx;

namespace {

Vec3 to_vec(const std::array<double, 3> &a) { return {a[0], a[1], a[2]}; }

MeasurementSetting random_setting(oracle::Sampler &rng) {
    return {to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit()), to_vec(rng.unit())};
}

oracle::Mat outcome_projector(const Vec3 &v, int outcome) {
    const double a[3] = {v(0), v(1), v(2)};
    return oracle::scale(oracle::add(oracle::eye(2), oracle::observable(a), outcome ? -1.0 : 1.0), 0.5);
}

/// Win probability of the XOR game where question s selects Alice's
/// observable `alice_index[s]`.
double oracle_win(const oracle::Mat &rho, const MeasurementSetting &m, std::array<int, 2> alice_index) {
    double win = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (s & t))
                        win += oracle::expect(oracle::kron(outcome_projector(m.alice(alice_index[s]), a),
                                                           outcome_projector(m.bob(t), b)),
                                              rho);
    return win / 4.0;
}

} // namespace

TEST_CASE("joint distribution") {
    oracle::Sampler rng(51);
    for (int k = 0; k < 30; ++k) {
        const auto g = rng.density(4, 1 + k % 4);
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(g));
        const auto s = random_setting(rng);
        const auto d = joint_distribution(rho, s, ChshSign::kLastMinus);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                double total = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        CHECK(d(a, b, x, y) >= -1e-15);
                        CHECK(d(a, b, x, y) ==
                              Approx(oracle::expect(oracle::kron(outcome_projector(s.alice(x), a),
                                                                 outcome_projector(s.bob(y), b)),
                                                    g))
                                  .epsilon(1e-12));
                        total += d(a, b, x, y);
                    }
                CHECK(total == Approx(1.0).epsilon(1e-12));
            }
        // Alice's marginal cannot depend on Bob's question, nor Bob's on hers.
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 2; ++a)
                CHECK(d(a, 0, x, 0) + d(a, 1, x, 0) == Approx(d(a, 0, x, 1) + d(a, 1, x, 1)).epsilon(1e-12));
        for (int y = 0; y < 2; ++y)
            for (int b = 0; b < 2; ++b)
                CHECK(d(0, b, 0, y) + d(1, b, 0, y) == Approx(d(0, b, 1, y) + d(1, b, 1, y)).epsilon(1e-12));
    }

    const auto mixed = named_state(Family::kMaximallyMixed);
    const auto u = joint_distribution(mixed, random_setting(rng));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) CHECK(u(a, b, x, y) == Approx(0.25).epsilon(1e-14));
    CHECK(analytic_win_probability(u) == Approx(0.5));
}

TEST_CASE("classical strategies") {
    double best = 0.0;
    int optimal = 0;
    for (int m = 0; m < 16; ++m) {
        const DeterministicStrategy st{{m & 1, (m >> 1) & 1}, {(m >> 2) & 1, (m >> 3) & 1}};
        int wins = 0;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) wins += (st.alice[s] ^ st.bob[t]) == (s & t);
        CHECK(deterministic_win_probability(st) == Approx(wins / 4.0));
        best = std::max(best, wins / 4.0);
        optimal += wins == 3;
    }
    CHECK(best == 0.75);
    CHECK(optimal == 8);
    CHECK(classical_max_win_probability() == 0.75);
}

TEST_CASE("analytic win probability") {
    oracle::Sampler rng(52);
    for (int k = 0; k < 100; ++k) {
        const auto g = rng.density(4, 1 + k % 4);
        const auto rho = DensityMatrix::from_matrix(oracle::to_eigen(g));
        const auto s = random_setting(rng);
        for (ChshSign sign : {ChshSign::kSecondMinus, ChshSign::kLastMinus}) {
            const double p = analytic_win_probability(rho, s, sign);
            CHECK(p == Approx(p_max(rho, s, sign)).epsilon(1e-12));
            CHECK(p <= 0.5 + std::numbers::sqrt2 / 4 + 1e-12);
        }
        CHECK(analytic_win_probability(rho, s, ChshSign::kLastMinus) == Approx(oracle_win(g, s, {0, 1})).epsilon(1e-12));
        CHECK(analytic_win_probability(rho, s, ChshSign::kSecondMinus) ==
              Approx(oracle_win(g, s, {1, 0})).epsilon(1e-12));
    }
    const auto phi = named_state(Family::kPhiPlus);
    CHECK(analytic_win_probability(phi, tsirelson_setting()) == Approx(0.5 + std::numbers::sqrt2 / 4).epsilon(1e-12));
    CHECK(analytic_win_probability(named_state(Family::kRho1), printed_setting_rho1()) ==
          Approx(0.7535).epsilon(1e-4));
}

TEST_CASE("simulation") {
    const auto phi = named_state(Family::kPhiPlus);
    const auto s = tsirelson_setting();
    const double p = analytic_win_probability(phi, s);
    const std::uint64_t n = 200000;
    for (std::uint64_t seed : {1ULL, 7ULL, 12345ULL}) {
        const auto r = simulate(phi, s, n, seed);
        CHECK(r.rounds == n);
        CHECK(std::abs(r.frequency() - p) <= 4 * std::sqrt(p * (1 - p) / n));
    }
    const auto again = simulate(phi, s, 1000, 99);
    CHECK(again.wins == simulate(phi, s, 1000, 99).wins);

    const auto one = simulate(phi, s, 1, 3);
    CHECK(one.rounds == 1);
    CHECK((one.frequency() == 0.0 || one.frequency() == 1.0));
    CHECK_THROWS_AS(simulate(phi, s, 0, 3), InvalidInput);

    // Questions uniform, rounds independent of scheduling.
    const auto dist = joint_distribution(phi, s);
    std::map<int, int> counts;
    std::uint64_t wins = 0;
    for (std::uint64_t r = 0; r < 40000; ++r) {
        const GameRound g = play_round(dist, 5, r);
        ++counts[2 * g.s + g.t];
        wins += g.wins();
    }
    CHECK(wins == simulate(phi, s, 40000, 5).wins);
    for (const auto &[q, c] : counts) CHECK(std::abs(c - 10000) < 4 * std::sqrt(40000 * 0.25 * 0.75));
    CHECK(play_round(dist, 5, 17).a == play_round(dist, 5, 17).a);

    const auto mixed = named_state(Family::kMaximallyMixed);
    const auto m = simulate(mixed, s, n, 11);
    CHECK(std::abs(m.frequency() - 0.5) <= 4 * std::sqrt(0.25 / n));
}
