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

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qnl/bell.hpp"
#include "qnl/states.hpp"

namespace qnl::app {

/// A parsed state argument. `rho` is always the two-qubit state analyzed;
/// three-qubit inputs keep the full state and are reduced over qubit C.
struct LoadedState {
    DensityMatrix rho;
    std::optional<DensityMatrix> rho3;
    std::optional<Canonical3Q> pure3;
    std::optional<Family> family;
    std::optional<double> parameter;
    std::string label;
};

/// Accepts "family:<tag>[:<value>]", inline JSON starting with '{', or a path
/// to a JSON state file. Throws InvalidInput with a diagnostic.
LoadedState load_state(std::string_view arg);
LoadedState state_from_json(const nlohmann::json &doc);

struct LoadedSetting {
    MeasurementSetting setting;
    ChshSign sign = ChshSign::kSecondMinus;
    std::string label;
};

/// Named settings: rho1, rho2 (printed worked-example directions, rescaled
/// to unit length), tsirelson (optimal for |Phi+>), xy, yz, xz (plane
/// settings). Anything else is read as inline JSON or a JSON file:
/// {"alice": [[..],[..]], "bob": [[..],[..]], "normalize": bool, "sign": "..."}.
LoadedSetting load_setting(std::string_view arg);
LoadedSetting setting_from_json(const nlohmann::json &doc);

/// Printed directions of the two worked examples (not unit length).
MeasurementSetting printed_setting_rho1();
MeasurementSetting printed_setting_rho2();
/// A0 = s_z, A1 = s_x, B0 = (s_x + s_z)/sqrt2, B1 = (s_x - s_z)/sqrt2.
MeasurementSetting tsirelson_setting();

} // namespace qnl::app
