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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "app/csv.hpp"
#include "app/state_io.hpp"
#include "qnl/tripartite.hpp"

namespace qnl::app {

enum class Target { kTable1, kFig1, kFig2, kFig3, kExamples, kCompat };
std::optional<Target> target_from_name(std::string_view name);
std::string_view target_name(Target t);

/// Optimal-witness value against its U bound, with the printed column.
CsvTable table1();
/// Mixed strength of the x family over x in (1/6, 1/3] for several q.
CsvTable fig1(int points = 50);
/// Maximal slice, xy witness, q = 0.3, strength grid over (0.1, 1.2].
CsvTable fig2(int points = 40);
/// Maximal slice, yz witness, q = 0.001, strength grid over (0.25, 0.7].
CsvTable fig3(int points = 40);
/// W-class curves over their windows.
CsvTable wclass_curve(CurveFamily f, int points = 30);

struct ExampleRow {
    std::string name;
    double published = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    std::string compat_id;
    bool pass() const;
};
/// Every printed worked-example scalar with its computed counterpart.
std::vector<ExampleRow> worked_examples();
CsvTable examples_table();

/// A printed claim or number that the computation does not reproduce, or an
/// open point whose resolution is recorded.
struct CompatEntry {
    std::string id;
    std::string topic;
    std::string published;
    std::string computed;
    std::string status; // "discrepancy" or "agreement"
    std::string detail;
};
std::vector<CompatEntry> compat_entries();
nlohmann::json compat_json();
std::string compat_text();

/// Writes the target's files into `out_dir`; returns their paths.
std::vector<std::filesystem::path> reproduce(Target t, const std::filesystem::path &out_dir);

struct ScanOptions {
    Family family;
    double from = 0.0;
    double to = 0.0;
    int points = 2;
    std::optional<double> q;
};
/// One row per grid point, ordered by grid index; evaluation runs in parallel.
CsvTable scan(const ScanOptions &opts);

struct GameReport {
    double analytic = 0.0;
    std::uint64_t rounds = 0;
    std::uint64_t wins = 0;
    double frequency = 0.0;
    double sigma = 0.0;
    double z = 0.0;
    std::string setting_label;
};
GameReport game(const LoadedState &state, const LoadedSetting &setting, std::uint64_t rounds,
                std::uint64_t seed);

} // namespace qnl::app
