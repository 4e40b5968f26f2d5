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
#include <string>
#include <vector>

#include <json.hpp>

#include "app/state_io.hpp"
#include "qnl/strength.hpp"
#include "qnl/tripartite.hpp"
#include "qnl/witness.hpp"

namespace qnl::app {

struct AnalyzeOptions {
    std::optional<Plane> plane;
    std::optional<LoadedSetting> setting;
    bool optimal_setting = false;
    std::optional<double> q;
    bool svetlichny = true; // run the optimizer when a three-qubit state is known
};

/// A printed number compared with the computed one. Known discrepancies
/// carry the id of their compatibility-report entry and do not fail.
struct PublishedCheck {
    std::string name;
    double published = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string compat_id; // non-empty for a documented discrepancy
};

struct AnalysisReport {
    std::string label;
    double m = 0.0;
    bool violates_chsh = false;
    double max_bell = 0.0;
    std::array<double, 3> plane_bell{};
    std::array<double, 3> plane_witness{};
    std::array<double, 3> plane_p_max{};
    double w_opt = 0.0;
    double witness_sum = 0.0;
    double negativity = 0.0;
    double concurrence = 0.0;
    double s_nl_planes = 0.0;
    WitnessInequality witness_inequality;
    ChshSumBounds sum_bounds;
    std::optional<double> u_bound;

    std::string witness_label; // selected witness
    StrengthReport strength;
    std::optional<double> q;
    std::string k_note; // why K / q / S_new are absent, if they are

    std::optional<PowerReport> power;
    std::optional<double> svetlichny_max;
    std::optional<double> svetlichny_bound;

    std::vector<PublishedCheck> published;

    /// All applicable bounds hold and every published check passes or is
    /// a documented discrepancy.
    bool strict_ok() const;
};

AnalysisReport analyze(const LoadedState &state, const AnalyzeOptions &opts = {});
nlohmann::json to_json(const AnalysisReport &r);
std::string to_text(const AnalysisReport &r);

} // namespace qnl::app
