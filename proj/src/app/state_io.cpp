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
#include "app/state_io.hpp"

#include <algorithm>

#include <charconv>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "qnl/error.hpp"

namespace qnl::app {

using nlohmann::json;

namespace {

Vec3 vec3(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 3)
        throw InvalidInput(fmt::format("{} must be an array of 3 numbers", what));
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw InvalidInput(fmt::format("{} has a non-numeric entry", what));
        v[i] = j[i].get<double>();
    }
    return v;
}

double parse_number(std::string_view s, const char *what) {
    double v = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw InvalidInput(fmt::format("{} '{}' is not a number", what, s));
    return v;
}

Complex entry(const json &e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    throw InvalidInput("matrix entries must be numbers or [re, im] pairs");
}

LoadedState from_two_qubit(DensityMatrix rho, std::string label) {
    return LoadedState{std::move(rho), std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                       std::move(label)};
}

LoadedState from_family(Family f, std::optional<double> p) {
    const auto &info = family_info(f);
    LoadedState s = from_two_qubit(named_state(f, p), std::string(info.tag));
    s.family = f;
    s.parameter = p;
    if (p) {
        s.label += fmt::format(":{}", *p);
        if (auto c3 = family_purification(f, *p)) {
            s.pure3 = *c3;
            s.rho3 = canonical_to_state(*c3);
        }
    }
    return s;
}

} // namespace

LoadedState state_from_json(const json &doc) {
    if (!doc.is_object()) throw InvalidInput("state document must be a JSON object");
    if (doc.contains("pauli")) {
        const auto &p = doc["pauli"];
        PauliDiagonalForm form;
        if (p.contains("a")) form.a = vec3(p["a"], "pauli.a");
        if (p.contains("b")) form.b = vec3(p["b"], "pauli.b");
        if (p.contains("c")) form.c = vec3(p["c"], "pauli.c");
        return from_two_qubit(from_pauli(form), "pauli");
    }
    if (doc.contains("matrix")) {
        const auto &m = doc["matrix"];
        if (!m.is_array()) throw InvalidInput("matrix must be an array");
        // Nested rows: dim arrays of dim entries each. Otherwise a flat list.
        const bool nested = (m.size() == 4 || m.size() == 8) &&
                            std::all_of(m.begin(), m.end(), [&](const json &row) {
                                return row.is_array() && row.size() == m.size();
                            });
        std::vector<Complex> flat;
        for (const auto &e : m) {
            if (nested)
                for (const auto &x : e) flat.push_back(entry(x));
            else
                flat.push_back(entry(e));
        }
        const Eigen::Index dim = flat.size() == 16 ? 4 : flat.size() == 64 ? 8 : 0;
        if (dim == 0)
            throw InvalidInput(fmt::format("matrix has {} entries, expected 16 or 64", flat.size()));
        ComplexMatrix mat(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) mat(i, j) = flat[i * dim + j];
        DensityMatrix rho = DensityMatrix::from_matrix(mat);
        if (dim == 4) return from_two_qubit(rho, "matrix");
        LoadedState s = from_two_qubit(
            DensityMatrix::from_matrix(partial_trace(rho.matrix(), 2)), "matrix");
        s.rho3 = rho;
        return s;
    }
    if (doc.contains("family")) {
        const auto &f = doc["family"];
        if (!f.contains("tag") || !f["tag"].is_string())
            throw InvalidInput("family.tag must be a string");
        const auto tag = f["tag"].get<std::string>();
        const auto fam = family_from_tag(tag);
        if (!fam) throw InvalidInput(fmt::format("unknown family tag '{}'", tag));
        std::optional<double> p;
        if (f.contains("parameter") && !f["parameter"].is_null()) {
            if (!f["parameter"].is_number()) throw InvalidInput("family.parameter must be a number");
            p = f["parameter"].get<double>();
        }
        return from_family(*fam, p);
    }
    if (doc.contains("canonical3q")) {
        const auto &c = doc["canonical3q"];
        if (!c.contains("lambda") || !c["lambda"].is_array() || c["lambda"].size() != 5)
            throw InvalidInput("canonical3q.lambda must be an array of 5 numbers");
        Canonical3Q c3;
        for (int i = 0; i < 5; ++i) c3.lambda[i] = c["lambda"][i].get<double>();
        c3.theta = c.value("theta", 0.0);
        c3.validate();
        LoadedState s = from_two_qubit(reduce_to_ab(c3), "canonical3q");
        s.pure3 = c3;
        s.rho3 = canonical_to_state(c3);
        return s;
    }
    throw InvalidInput("state document needs one of: pauli, matrix, family, canonical3q");
}

LoadedState load_state(std::string_view arg) {
    constexpr std::string_view prefix = "family:";
    if (arg.starts_with(prefix)) {
        std::string_view rest = arg.substr(prefix.size());
        std::optional<double> p;
        if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
            p = parse_number(rest.substr(colon + 1), "family parameter");
            rest = rest.substr(0, colon);
        }
        const auto fam = family_from_tag(rest);
        if (!fam) {
            std::string known;
            for (const auto &info : families()) known += fmt::format(" {}", info.tag);
            throw InvalidInput(fmt::format("unknown family '{}'; known:{}", rest, known));
        }
        return from_family(*fam, p);
    }
    json doc;
    try {
        if (!arg.empty() && arg.front() == '{') {
            doc = json::parse(arg);
        } else {
            std::ifstream f{std::string(arg)};
            if (!f) throw InvalidInput(fmt::format("cannot open state file '{}'", arg));
            doc = json::parse(f);
        }
    } catch (const json::exception &e) {
        throw InvalidInput(fmt::format("state JSON does not parse: {}", e.what()));
    }
    return state_from_json(doc);
}

MeasurementSetting printed_setting_rho1() {
    return MeasurementSetting::normalized({1, 0, 0}, {0, 1, 0}, {0.8, 0.4, 0.447},
                                          {-0.4, 0.8, 0.447});
}

MeasurementSetting printed_setting_rho2() {
    return MeasurementSetting::normalized({0.7, 0.5, 0.5099}, {0.7, 0.5, 0.5099},
                                          {0.4, 0.4, 0.8246}, {0.5, 0.3, 0.812404});
}

MeasurementSetting tsirelson_setting() {
    const double h = std::numbers::sqrt2 / 2.0;
    return MeasurementSetting({0, 0, 1}, {1, 0, 0}, {h, 0, h}, {h, 0, -h});
}

LoadedSetting setting_from_json(const json &doc) {
    if (!doc.is_object() || !doc.contains("alice") || !doc.contains("bob"))
        throw InvalidInput("setting document needs 'alice' and 'bob' arrays");
    const auto &a = doc["alice"], &b = doc["bob"];
    if (!a.is_array() || a.size() != 2 || !b.is_array() || b.size() != 2)
        throw InvalidInput("'alice' and 'bob' must each hold two 3-vectors");
    const Vec3 a0 = vec3(a[0], "alice[0]"), a1 = vec3(a[1], "alice[1]");
    const Vec3 b0 = vec3(b[0], "bob[0]"), b1 = vec3(b[1], "bob[1]");
    ChshSign sign = ChshSign::kSecondMinus;
    if (doc.contains("sign")) {
        const auto name = doc["sign"].get<std::string>();
        const auto s = sign_from_name(name);
        if (!s) throw InvalidInput(fmt::format("unknown sign pattern '{}'", name));
        sign = *s;
    }
    const bool normalize = doc.value("normalize", false);
    return {normalize ? MeasurementSetting::normalized(a0, a1, b0, b1)
                      : MeasurementSetting(a0, a1, b0, b1),
            sign, "custom"};
}

LoadedSetting load_setting(std::string_view arg) {
    if (arg == "rho1") return {printed_setting_rho1(), ChshSign::kSecondMinus, "rho1"};
    if (arg == "rho2") return {printed_setting_rho2(), ChshSign::kSecondMinus, "rho2"};
    if (arg == "tsirelson") return {tsirelson_setting(), ChshSign::kSecondMinus, "tsirelson"};
    if (const auto p = plane_from_name(arg))
        return {plane_setting(*p), ChshSign::kLastMinus, std::string(plane_name(*p))};
    json doc;
    try {
        if (!arg.empty() && arg.front() == '{') {
            doc = json::parse(arg);
        } else {
            std::ifstream f{std::string(arg)};
            if (!f) throw InvalidInput(fmt::format("cannot open setting file '{}'", arg));
            doc = json::parse(f);
        }
    } catch (const json::exception &e) {
        throw InvalidInput(fmt::format("setting JSON does not parse: {}", e.what()));
    }
    return setting_from_json(doc);
}

} // namespace qnl::app
