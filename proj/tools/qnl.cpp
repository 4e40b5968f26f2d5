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
// qnl: command-line front end for analysis, sweeps, game simulation and
// dataset reproduction.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "app/analysis.hpp"
#include "app/reproduce.hpp"
#include "app/state_io.hpp"
#include "qnl/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitStrict = 2;

using namespace qnl;
using namespace qnl::app;

void emit(const std::string &body, const std::string &out) {
    if (out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + out);
    f << body;
}

int strict_result(bool ok, bool lenient, const std::string &what) {
    if (ok) return kExitOk;
    if (lenient) {
        std::cerr << "warning: " << what << "\n";
        return kExitOk;
    }
    std::cerr << "error: " << what << "\n";
    return kExitStrict;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bell nonlocality, witness and strength analysis for qubit states"};
    app.require_subcommand(1);
    bool lenient = false;
    app.add_flag("--lenient", lenient, "Report tolerance failures as warnings (exit 0)");

    std::string state_arg, setting_arg, plane_arg, format = "text", out;
    std::optional<double> q;

    auto *analyze_cmd = app.add_subcommand("analyze", "Full report for one state");
    analyze_cmd->add_option("--state", state_arg, "file, inline JSON or family:tag[:param]")
        ->required();
    analyze_cmd->add_option("--plane", plane_arg, "witness plane")
        ->check(CLI::IsMember({"xy", "yz", "xz"}));
    analyze_cmd->add_option("--setting", setting_arg,
                            "file, inline JSON, rho1, rho2, tsirelson, a plane name or optimal");
    analyze_cmd->add_option("--q", q, "mixing weight for the mixed strength measure");
    analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    analyze_cmd->add_option("--out", out, "output file (default stdout)");

    std::string target;
    std::string out_dir;
    auto *reproduce_cmd = app.add_subcommand("reproduce", "Write datasets and reports");
    reproduce_cmd->add_option("--target", target)
        ->required()
        ->check(CLI::IsMember({"table1", "fig1", "fig2", "fig3", "examples", "compat", "all"}));
    reproduce_cmd->add_option("--out", out_dir)->required();

    std::uint64_t rounds = 1000000, seed = 1;
    auto *game_cmd = app.add_subcommand("game", "Simulate the CHSH game");
    game_cmd->add_option("--state", state_arg)->required();
    game_cmd->add_option("--setting", setting_arg, "defaults to the optimal setting");
    game_cmd->add_option("--rounds", rounds)->check(CLI::PositiveNumber);
    game_cmd->add_option("--seed", seed);
    game_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string family_tag;
    double from = 0.0, to = 0.0;
    int points = 2;
    auto *scan_cmd = app.add_subcommand("scan", "Sweep a family parameter, CSV output");
    scan_cmd->add_option("--family", family_tag)->required();
    scan_cmd->add_option("--from", from)->required();
    scan_cmd->add_option("--to", to)->required();
    scan_cmd->add_option("--points", points)->required();
    scan_cmd->add_option("--q", q);
    scan_cmd->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*analyze_cmd) {
            AnalyzeOptions opts;
            if (!plane_arg.empty()) opts.plane = plane_from_name(plane_arg);
            if (setting_arg == "optimal")
                opts.optimal_setting = true;
            else if (!setting_arg.empty())
                opts.setting = load_setting(setting_arg);
            opts.q = q;
            const LoadedState state = load_state(state_arg);
            const AnalysisReport r = analyze(state, opts);
            emit(format == "json" ? to_json(r).dump(2) + "\n" : to_text(r), out);
            return strict_result(r.strict_ok(), lenient,
                                 "a bound check or published-value comparison failed");
        }
        if (*reproduce_cmd) {
            std::vector<Target> targets;
            if (target == "all")
                targets = {Target::kTable1, Target::kFig1, Target::kFig2, Target::kFig3,
                           Target::kExamples, Target::kCompat};
            else
                targets = {*target_from_name(target)};
            bool ok = true;
            for (Target t : targets) {
                for (const auto &p : reproduce(t, out_dir)) std::cout << p.string() << "\n";
                if (t == Target::kExamples)
                    for (const auto &row : worked_examples())
                        ok = ok && (row.pass() || !row.compat_id.empty());
            }
            return strict_result(ok, lenient, "an undocumented published value did not match");
        }
        if (*game_cmd) {
            const LoadedState state = load_state(state_arg);
            const LoadedSetting setting = [&]() -> LoadedSetting {
                if (!setting_arg.empty() && setting_arg != "optimal") return load_setting(setting_arg);
                return {optimize_settings(state.rho).setting, ChshSign::kSecondMinus, "optimal"};
            }();
            const GameReport g = game(state, setting, rounds, seed);
            if (format == "json") {
                const nlohmann::json j = {{"state", state.label},   {"setting", g.setting_label},
                                          {"rounds", g.rounds},      {"seed", seed},
                                          {"analytic", g.analytic},  {"wins", g.wins},
                                          {"frequency", g.frequency}, {"sigma", g.sigma},
                                          {"z", g.z}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << fmt::format("state      {}\nsetting    {}\nrounds     {}\nseed       {}\n"
                                         "analytic   {:.6g}\nwins       {}\nfrequency  {:.6g}\n"
                                         "sigma      {:.6g}\nz          {:.6g}\n",
                                         state.label, g.setting_label, g.rounds, seed, g.analytic,
                                         g.wins, g.frequency, g.sigma, g.z);
            }
            return kExitOk;
        }
        if (*scan_cmd) {
            const auto fam = family_from_tag(family_tag);
            if (!fam) throw InvalidInput("unknown family '" + family_tag + "'");
            const CsvTable t = scan({*fam, from, to, points, q});
            emit(t.str(), out);
            return kExitOk;
        }
    } catch (const InvalidInput &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotApplicable &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStrict;
    }
    return kExitOk;
}
