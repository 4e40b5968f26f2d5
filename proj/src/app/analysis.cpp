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
#include "app/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "app/csv.hpp"
#include "qnl/error.hpp"

namespace qnl::app {

using nlohmann::json;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void add(std::vector<PublishedCheck> &out, std::string name, double published, double computed,
         double tol, std::string compat_id = {}) {
    out.push_back({std::move(name), published, computed, tol,
                   std::abs(published - computed) <= tol, std::move(compat_id)});
}

std::vector<PublishedCheck> published_checks(const LoadedState &s, const AnalysisReport &r) {
    std::vector<PublishedCheck> out;
    if (!s.family) return out;
    const DensityMatrix &rho = s.rho;
    const double p = s.parameter.value_or(0.0);
    switch (*s.family) {
    case Family::kRho1: {
        const auto set = printed_setting_rho1();
        add(out, "witness value, printed setting", -0.028, expectation(w_chsh(set), rho), 1e-3);
        add(out, "strength, printed setting", 0.0035, s_nl_witness(rho, set), 1e-3);
        break;
    }
    case Family::kRho2:
        add(out, "witness value, printed setting", 1.9845,
            expectation(w_chsh(printed_setting_rho2()), rho), 1e-3, "rho2-witness-trace");
        break;
    case Family::kRho3:
        add(out, "<B_xy>", -1.9799, r.plane_bell[0], 5e-4);
        add(out, "<B_yz>", -1.93747, r.plane_bell[1], 5e-4);
        add(out, "<B_xz>", -1.93747, r.plane_bell[2], 5e-4);
        add(out, "Tr[W_opt rho]", -0.2675, r.w_opt, 5e-4);
        add(out, "plane witness sum", 11.85484, r.witness_sum, 1e-3);
        break;
    case Family::kRhoN:
        add(out, "<B_xy>", -1.41987, r.plane_bell[0], 5e-4);
        add(out, "<B_yz>", -1.65416, r.plane_bell[1], 5e-4);
        add(out, "<B_xz>", -1.65133, r.plane_bell[2], 5e-4);
        add(out, "Tr[W_opt rho]", -0.167667, r.w_opt, 5e-4);
        add(out, "U", 0.15933, r.u_bound.value_or(std::nan("")), 5e-4);
        break;
    case Family::kRhoX: {
        add(out, "Tr[W_xy rho]", 2.0 - 4.0 * kSqrt2 * p, r.plane_witness[0], 1e-9);
        add(out, "P_xy - 3/4", 4.0 * kSqrt2 * p - 2.0, r.plane_p_max[0] - 0.75, 1e-9,
            "p-excess-missing-eighth");
        if (r.negativity > kEntanglementTol) {
            const double closed = (1.0 - 2.0 * (1.0 + kSqrt2) * p + 6.0 * p * p) /
                                  (2.0 * (std::sqrt(72.0 * p * p - 12.0 * p + 1.0) - 1.0));
            add(out, "K (xy witness)", closed, k_quantity(rho, w_plane(Plane::kXY)), 1e-9);
        }
        break;
    }
    case Family::kMaximalSlice: {
        const double c = std::cos(p);
        add(out, "Tr[W_xy rho]", 2.0, r.plane_witness[0], 1e-9);
        add(out, "Tr[W_yz rho]", 2.0 - kSqrt2 + kSqrt2 * c, r.plane_witness[1], 1e-9);
        add(out, "negativity", c, r.negativity, 1e-9);
        if (r.negativity > kEntanglementTol) {
            add(out, "K (xy witness)", 1.0 / (4.0 * c), k_quantity(rho, w_plane(Plane::kXY)),
                1e-9);
            add(out, "K (yz witness)", (2.0 - kSqrt2 + kSqrt2 * c) / (8.0 * c),
                k_quantity(rho, w_plane(Plane::kYZ)), 1e-9);
        }
        if (r.svetlichny_max)
            add(out, "Svetlichny maximum", 4.0 * std::sqrt(2.0 - c * c), *r.svetlichny_max, 1e-4);
        break;
    }
    case Family::kWClass1:
        add(out, "Tr[W_xz rho]", 0.840345 - 2.82843 * p * std::sqrt(0.91 - p * p),
            r.plane_witness[2], 1e-5);
        break;
    case Family::kWClass2: {
        add(out, "Tr[W_xy rho]", 2.0, r.plane_witness[0], 1e-9);
        if (r.negativity > kEntanglementTol) {
            const double k = k_quantity(rho, w_plane(Plane::kXY));
            add(out, "K (xy witness)",
                2.0 - 2.04 * p * p + 4.0 * std::pow(p, 4) - 1.38593 * p * std::sqrt(0.51 - p * p),
                k, 1e-6, "wclass2-k-expression");
            const double root = std::sqrt(51.0 - 100.0 * p * p);
            const double kk = 1.02 * p * p + 0.15 * p * root + 0.692965 * p * std::sqrt(0.51 - p * p);
            try {
                add(out, "mixed strength, q = 0.6", (1.0 + 2.0 * std::pow(p, 4) - kk) / (p * root),
                    s_nl_new(rho, w_plane(Plane::kXY), 0.6), 1e-6);
            } catch (const std::exception &) {
            }
        }
        break;
    }
    case Family::kPhiPlus:
        add(out, "Horodecki M", 2.0, r.m, 1e-12);
        break;
    case Family::kMaximallyMixed:
        break;
    }
    return out;
}

} // namespace

bool AnalysisReport::strict_ok() const {
    if (!strength.all_pass()) return false;
    if (power && !power->consistent()) return false;
    if (witness_inequality.within && !*witness_inequality.within) return false;
    if (sum_bounds.within && !*sum_bounds.within) return false;
    return std::all_of(published.begin(), published.end(), [](const PublishedCheck &c) {
        return c.pass || !c.compat_id.empty();
    });
}

AnalysisReport analyze(const LoadedState &state, const AnalyzeOptions &opts) {
    const DensityMatrix &rho = state.rho;
    AnalysisReport r;
    r.label = state.label;
    r.m = horodecki_m(rho);
    r.violates_chsh = violates_chsh(rho);
    r.max_bell = max_bell_value(rho);
    for (std::size_t k = 0; k < kAllPlanes.size(); ++k) {
        r.plane_bell[k] = expectation(plane_bell_operator(kAllPlanes[k]), rho);
        r.plane_witness[k] = 2.0 - r.plane_bell[k];
        r.plane_p_max[k] = 0.5 * (1.0 + r.plane_bell[k] / 4.0);
        r.witness_sum += r.plane_witness[k];
    }
    r.w_opt = expectation(w_opt(), rho);
    r.negativity = negativity(rho);
    r.concurrence = concurrence(rho);
    r.s_nl_planes = s_nl_planes(rho);
    r.witness_inequality = witness_inequality(rho);
    r.sum_bounds = chsh_sum_bounds(rho);
    try {
        r.u_bound = u_bound(rho);
    } catch (const NotApplicable &) {
    }

    MeasurementSetting setting = plane_setting(Plane::kXY);
    ChshSign sign = ChshSign::kLastMinus;
    if (opts.setting) {
        setting = opts.setting->setting;
        sign = opts.setting->sign;
        r.witness_label = "setting " + opts.setting->label;
    } else if (opts.optimal_setting) {
        setting = optimize_settings(rho).setting;
        sign = ChshSign::kSecondMinus;
        r.witness_label = "optimal setting";
    } else {
        Plane chosen = Plane::kXY;
        if (opts.plane) {
            chosen = *opts.plane;
        } else {
            const auto it = std::min_element(r.plane_witness.begin(), r.plane_witness.end());
            chosen = kAllPlanes[it - r.plane_witness.begin()];
        }
        setting = plane_setting(chosen);
        r.witness_label = fmt::format("plane {}", plane_name(chosen));
    }
    r.q = opts.q;
    r.strength = bound_suite(rho, setting, sign, opts.q);
    if (r.strength.detected)
        r.k_note = "witness detects the state; mixed measure not used";
    else if (r.strength.negativity <= kEntanglementTol)
        r.k_note = "state is PPT; K undefined";
    else if (!r.strength.q_upper)
        r.k_note = "K is not positive; mixed measure inconclusive";
    else if (opts.q && !r.strength.s_nl_new)
        r.k_note = fmt::format("q = {} is not below the threshold {:.6g}", *opts.q,
                               *r.strength.q_upper);

    if (state.pure3) r.power = power_bounds(*state.pure3);
    if (state.rho3) {
        r.svetlichny_bound = tightest_svetlichny_bound(*state.rho3);
        if (opts.svetlichny) r.svetlichny_max = svetlichny_max(*state.rho3).value;
    }
    r.published = published_checks(state, r);
    return r;
}

namespace {

json optional_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

} // namespace

json to_json(const AnalysisReport &r) {
    json j;
    j["state"] = r.label;
    j["horodecki_m"] = r.m;
    j["violates_chsh"] = r.violates_chsh;
    j["max_bell_value"] = r.max_bell;
    json planes = json::object();
    for (std::size_t k = 0; k < kAllPlanes.size(); ++k)
        planes[std::string(plane_name(kAllPlanes[k]))] = {{"bell", r.plane_bell[k]},
                                                          {"witness", r.plane_witness[k]},
                                                          {"p_max", r.plane_p_max[k]}};
    j["planes"] = planes;
    j["optimal_witness"] = r.w_opt;
    j["plane_witness_sum"] = r.witness_sum;
    j["negativity"] = r.negativity;
    j["concurrence"] = r.concurrence;
    j["s_nl_planes"] = r.s_nl_planes;
    j["witness_inequality"] = {
        {"value", r.witness_inequality.value},
        {"precondition_met", r.witness_inequality.precondition_met},
        {"within", r.witness_inequality.within ? json(*r.witness_inequality.within) : json(nullptr)},
        {"interval", {witness_interval().lower, witness_interval().upper}}};
    j["plane_sum_bounds"] = {
        {"sum", r.sum_bounds.sum},
        {"from_optimal_witness", r.sum_bounds.from_optimal},
        {"interval", {r.sum_bounds.lower, r.sum_bounds.upper}},
        {"hypotheses_met", r.sum_bounds.hypotheses_met},
        {"within", r.sum_bounds.within ? json(*r.sum_bounds.within) : json(nullptr)}};
    j["u_bound"] = optional_json(r.u_bound);

    const auto &s = r.strength;
    json st = {{"witness", r.witness_label},
               {"bell_value", s.bell_value},
               {"witness_value", s.witness_value},
               {"detected", s.detected},
               {"p_max", s.p_max},
               {"s_nl", s.s_nl},
               {"k", optional_json(s.k)},
               {"q_threshold", optional_json(s.q_upper)},
               {"q", optional_json(r.q)},
               {"s_nl_new", optional_json(s.s_nl_new)}};
    if (!r.k_note.empty()) st["note"] = r.k_note;
    json bounds = json::array();
    for (const auto &b : s.bounds)
        bounds.push_back({{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs},
                          {"applicable", b.applicable}, {"pass", b.pass}});
    st["bounds"] = bounds;
    j["strength"] = st;

    if (r.power) {
        const auto &p = *r.power;
        j["teleportation"] = {{"tangle", p.tangle},
                              {"concurrence", p.concurrence},
                              {"negativity", p.negativity},
                              {"horodecki_m", p.m},
                              {"L", p.l},
                              {"conditioned_fidelity", p.f_c_exact},
                              {"conditioned_fidelity_bound", p.f_c_upper},
                              {"unconditioned_fidelity_bound", p.f_nc_lower},
                              {"power_bound", p.power_upper},
                              {"violates_chsh", p.violates_chsh},
                              {"in_window", p.in_window},
                              {"strength_cap", optional_json(p.strength_cap)},
                              {"power_cap", optional_json(p.power_cap)},
                              {"consistent", p.consistent()}};
    }
    if (r.svetlichny_bound) {
        j["svetlichny"] = {{"maximum", optional_json(r.svetlichny_max)},
                           {"bound", *r.svetlichny_bound}};
    }
    json pub = json::array();
    for (const auto &c : r.published) {
        json e = {{"name", c.name}, {"published", c.published}, {"computed", c.computed},
                  {"tolerance", c.tolerance}, {"pass", c.pass}};
        if (!c.compat_id.empty()) e["compat"] = c.compat_id;
        pub.push_back(e);
    }
    j["published_checks"] = pub;
    j["strict_ok"] = r.strict_ok();
    return j;
}

std::string to_text(const AnalysisReport &r) {
    std::ostringstream os;
    auto line = [&](std::string_view k, const std::string &v) { os << fmt::format("{:<28} {}\n", k, v); };
    auto opt = [](const std::optional<double> &v) { return v ? human(*v) : std::string("n/a"); };
    line("state", r.label);
    line("Horodecki M", human(r.m) + (r.violates_chsh ? " (violates CHSH)" : ""));
    line("max Bell value", human(r.max_bell));
    for (std::size_t k = 0; k < kAllPlanes.size(); ++k)
        line(fmt::format("plane {}", plane_name(kAllPlanes[k])),
             fmt::format("<B> {}  <W> {}  P {}", human(r.plane_bell[k]), human(r.plane_witness[k]),
                         human(r.plane_p_max[k])));
    line("Tr[W_opt rho]", human(r.w_opt));
    line("plane witness sum", human(r.witness_sum));
    line("negativity", human(r.negativity));
    line("concurrence", human(r.concurrence));
    line("S_NL over planes", human(r.s_nl_planes));
    line("U bound", opt(r.u_bound));
    const auto &s = r.strength;
    line("selected witness", r.witness_label);
    line("  witness value", human(s.witness_value) + (s.detected ? " (detects)" : ""));
    line("  P_max", human(s.p_max));
    line("  S_NL", human(s.s_nl));
    line("  K", opt(s.k));
    line("  q threshold", opt(s.q_upper));
    line("  S_NL new", opt(s.s_nl_new));
    if (!r.k_note.empty()) line("  note", r.k_note);
    for (const auto &b : s.bounds)
        if (b.applicable)
            line("  bound: " + b.name, fmt::format("{} <= {} {}", human(b.lhs), human(b.rhs),
                                                   b.pass ? "ok" : "FAILED"));
    if (r.power) {
        const auto &p = *r.power;
        line("tangle", human(p.tangle));
        line("L", human(p.l));
        line("power bound", human(p.power_upper));
        line("fidelity (exact, bound)", fmt::format("{} {}", human(p.f_c_exact), human(p.f_c_upper)));
    }
    if (r.svetlichny_bound) {
        line("Svetlichny maximum", opt(r.svetlichny_max));
        line("Svetlichny bound", human(*r.svetlichny_bound));
    }
    for (const auto &c : r.published)
        line("published: " + c.name,
             fmt::format("{} vs computed {} {}", human(c.published), human(c.computed),
                         c.pass ? "match" : c.compat_id.empty() ? "MISMATCH"
                                                               : "differs, see " + c.compat_id));
    return os.str();
}

} // namespace qnl::app
