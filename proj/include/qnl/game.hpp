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

#include "qnl/bell.hpp"

namespace qnl {

/// Questions s, t and answers a, b of one round.
struct GameRound {
    int s = 0, t = 0, a = 0, b = 0;
    bool wins() const { return (a ^ b) == (s & t); }
};

/// p(a, b | s, t) indexed [a][b][s][t].
struct OutcomeDistribution {
    std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> p{};

    double operator()(int a, int b, int s, int t) const { return p[a][b][s][t]; }
};

/// Which of Alice's observables answers question s. The last-minus pattern
/// maps questions directly; the second-minus pattern is the same game with
/// Alice's questions swapped.
int alice_observable_for_question(ChshSign sign, int s);

/// p(a,b|s,t) = Tr[(A_s^a x B_t^b) rho] with A_s^a = (I + (-1)^a A_s)/2.
OutcomeDistribution joint_distribution(const DensityMatrix &rho, const MeasurementSetting &s,
                                       ChshSign sign = ChshSign::kSecondMinus);

/// Uniform questions: 1/4 sum_{s,t} sum_{a xor b = st} p(a,b|s,t).
double analytic_win_probability(const OutcomeDistribution &dist);
double analytic_win_probability(const DensityMatrix &rho, const MeasurementSetting &s,
                                ChshSign sign = ChshSign::kSecondMinus);

/// Deterministic local strategy: answer tables a(s), b(t).
struct DeterministicStrategy {
    std::array<int, 2> alice{};
    std::array<int, 2> bob{};
};
double deterministic_win_probability(const DeterministicStrategy &st);
/// Maximum over all 16 deterministic strategies.
double classical_max_win_probability();

struct SimulationResult {
    std::uint64_t rounds = 0;
    std::uint64_t wins = 0;
    double frequency() const { return rounds ? static_cast<double>(wins) / rounds : 0.0; }
};

/// Round r draws its questions and outcome from splitmix64 over (seed, r), so
/// the result does not depend on how rounds are scheduled.
GameRound play_round(const OutcomeDistribution &dist, std::uint64_t seed, std::uint64_t round);
SimulationResult simulate(const DensityMatrix &rho, const MeasurementSetting &s,
                          std::uint64_t rounds, std::uint64_t seed,
                          ChshSign sign = ChshSign::kSecondMinus);

} // namespace qnl
