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
#include "qnl/game.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "qnl/error.hpp"
#include "qnl/random.hpp"

namespace qnl {

int alice_observable_for_question(ChshSign sign, int s) {
    return sign == ChshSign::kLastMinus ? s : 1 - s;
}

OutcomeDistribution joint_distribution(const DensityMatrix &rho, const MeasurementSetting &set,
                                       ChshSign sign) {
    if (rho.dim() != 4) throw InvalidInput("the game needs a two-qubit state");
    const auto &id = pauli::identity();
    auto projector = [&](const Vec3 &v, int outcome) -> ComplexMatrix {
        return 0.5 * (id + (outcome == 0 ? 1.0 : -1.0) * observable(v));
    };
    OutcomeDistribution d;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const ComplexMatrix op =
                        tensor(projector(set.alice(alice_observable_for_question(sign, s)), a),
                               projector(set.bob(t), b));
                    d.p[a][b][s][t] = trace_product_real(op, rho.matrix());
                }
    return d;
}

double analytic_win_probability(const OutcomeDistribution &d) {
    double total = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (GameRound{s, t, a, b}.wins()) total += d.p[a][b][s][t];
    return total / 4.0;
}

double analytic_win_probability(const DensityMatrix &rho, const MeasurementSetting &s,
                                ChshSign sign) {
    return analytic_win_probability(joint_distribution(rho, s, sign));
}

double deterministic_win_probability(const DeterministicStrategy &st) {
    int wins = 0;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) wins += GameRound{s, t, st.alice[s], st.bob[t]}.wins();
    return wins / 4.0;
}

double classical_max_win_probability() {
    double best = 0.0;
    for (int code = 0; code < 16; ++code) {
        const DeterministicStrategy st{{code & 1, (code >> 1) & 1},
                                       {(code >> 2) & 1, (code >> 3) & 1}};
        best = std::max(best, deterministic_win_probability(st));
    }
    return best;
}

GameRound play_round(const OutcomeDistribution &d, std::uint64_t seed, std::uint64_t round) {
    const std::uint64_t bits = splitmix64(seed ^ splitmix64(round));
    GameRound r;
    r.s = static_cast<int>(bits & 1);
    r.t = static_cast<int>((bits >> 1) & 1);
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    double acc = 0.0;
    r.a = r.b = 1;
    for (int k = 0; k < 4; ++k) {
        acc += d.p[k >> 1][k & 1][r.s][r.t];
        if (u < acc) {
            r.a = k >> 1;
            r.b = k & 1;
            break;
        }
    }
    return r;
}

SimulationResult simulate(const DensityMatrix &rho, const MeasurementSetting &set,
                          std::uint64_t rounds, std::uint64_t seed, ChshSign sign) {
    if (rounds < 1) throw InvalidInput("simulation needs at least one round");
    const OutcomeDistribution d = joint_distribution(rho, set, sign);
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(rounds / 65536, 1,
                                                        std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::uint64_t> wins(workers, 0);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                const std::uint64_t lo = rounds * w / workers, hi = rounds * (w + 1) / workers;
                std::uint64_t count = 0;
                for (std::uint64_t r = lo; r < hi; ++r) count += play_round(d, seed, r).wins();
                wins[w] = count;
            });
    }
    SimulationResult out{rounds, 0};
    for (auto c : wins) out.wins += c;
    return out;
}

} // namespace qnl
