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
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "app/analysis.hpp"
#include "app/reproduce.hpp"
#include "app/state_io.hpp"
#include "qnl/bell.hpp"
#include "qnl/error.hpp"
#include "qnl/game.hpp"
#include "qnl/strength.hpp"
#include "qnl/tripartite.hpp"
#include "qnl/witness.hpp"

namespace py = pybind11;
using namespace qnl;

namespace {

Plane plane_arg(const std::string &name) {
    const auto p = plane_from_name(name);
    if (!p) throw InvalidInput("unknown plane '" + name + "'");
    return *p;
}

ChshSign sign_arg(const std::string &name) {
    const auto s = sign_from_name(name);
    if (!s) throw InvalidInput("unknown sign pattern '" + name + "'");
    return *s;
}

Family family_arg(const std::string &tag) {
    const auto f = family_from_tag(tag);
    if (!f) throw InvalidInput("unknown family '" + tag + "'");
    return *f;
}

py::object json_to_py(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bell nonlocality, witness and strength analysis for qubit states";

    py::register_exception<NotApplicable>(m, "NotApplicable", PyExc_ValueError);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const ComplexMatrix &mat) { return DensityMatrix::from_matrix(mat); }),
             py::arg("matrix"))
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def_property_readonly("qubits", &DensityMatrix::qubits);

    py::class_<MeasurementSetting>(m, "MeasurementSetting")
        .def(py::init<const Vec3 &, const Vec3 &, const Vec3 &, const Vec3 &>(), py::arg("a0"),
             py::arg("a1"), py::arg("b0"), py::arg("b1"))
        .def_static("normalized", &MeasurementSetting::normalized)
        .def("alice", &MeasurementSetting::alice)
        .def("bob", &MeasurementSetting::bob);

    m.def("from_pauli",
          [](const Vec3 &a, const Vec3 &b, const Vec3 &c) { return from_pauli({a, b, c}); },
          py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("named_state",
          [](const std::string &tag, std::optional<double> p) {
              return named_state(family_arg(tag), p);
          },
          py::arg("tag"), py::arg("parameter") = py::none());
    m.def("load_state", [](const std::string &arg) { return app::load_state(arg).rho; });
    m.def("correlation_matrix", &correlation_matrix);

    m.def("horodecki_m", &horodecki_m);
    m.def("max_bell_value", &max_bell_value);
    m.def("violates_chsh", &violates_chsh);
    m.def("plane_bell_value", [](const DensityMatrix &rho, const std::string &plane) {
        return expectation(plane_bell_operator(plane_arg(plane)), rho);
    });
    m.def("p_max",
          [](const DensityMatrix &rho, const MeasurementSetting &s, const std::string &sign) {
              return p_max(rho, s, sign_arg(sign));
          },
          py::arg("rho"), py::arg("setting"), py::arg("sign") = "second-minus");
    m.def("optimize_settings", [](const DensityMatrix &rho, int starts, std::uint64_t seed) {
        OptimizerOptions o;
        o.starts = starts;
        o.seed = seed;
        const auto r = optimize_settings(rho, ChshSign::kSecondMinus, o);
        return py::make_tuple(r.setting, r.value);
    }, py::arg("rho"), py::arg("starts") = 32, py::arg("seed") = 0x5EEDULL);

    m.def("witness_value",
          [](const DensityMatrix &rho, const std::string &plane) {
              return expectation(plane == "opt" ? w_opt() : w_plane(plane_arg(plane)), rho);
          },
          py::arg("rho"), py::arg("plane"));
    m.def("chsh_witness_value",
          [](const DensityMatrix &rho, const MeasurementSetting &s, const std::string &sign) {
              return expectation(w_chsh(s, sign_arg(sign)), rho);
          },
          py::arg("rho"), py::arg("setting"), py::arg("sign") = "second-minus");
    m.def("witness_interval", [] {
        const auto w = witness_interval();
        return py::make_tuple(w.lower, w.upper);
    });
    m.def("u_bound", &u_bound);
    m.def("u_bound_from_value", &u_bound_from_value);

    m.def("s_nl",
          [](const DensityMatrix &rho, const MeasurementSetting &s, const std::string &sign) {
              return s_nl(rho, s, sign_arg(sign));
          },
          py::arg("rho"), py::arg("setting"), py::arg("sign") = "second-minus");
    m.def("negativity", &negativity);
    m.def("k_quantity", [](const DensityMatrix &rho, const std::string &plane) {
        return k_quantity(rho, w_plane(plane_arg(plane)));
    });
    m.def("q_upper_bound", [](const DensityMatrix &rho, const std::string &plane) {
        return q_upper_bound(rho, w_plane(plane_arg(plane)));
    });
    m.def("s_nl_new", [](const DensityMatrix &rho, const std::string &plane, double q) {
        return s_nl_new(rho, w_plane(plane_arg(plane)), q);
    });

    m.def("analytic_win_probability",
          [](const DensityMatrix &rho, const MeasurementSetting &s, const std::string &sign) {
              return analytic_win_probability(rho, s, sign_arg(sign));
          },
          py::arg("rho"), py::arg("setting"), py::arg("sign") = "second-minus");
    m.def("classical_max_win_probability", &classical_max_win_probability);
    m.def("simulate",
          [](const DensityMatrix &rho, const MeasurementSetting &s, std::uint64_t rounds,
             std::uint64_t seed) {
              const auto r = simulate(rho, s, rounds, seed);
              return py::make_tuple(r.wins, r.rounds);
          },
          py::arg("rho"), py::arg("setting"), py::arg("rounds"), py::arg("seed"));

    m.def("canonical_state",
          [](const std::array<double, 5> &l, double theta) {
              return canonical_to_state(Canonical3Q{l, theta});
          },
          py::arg("lambdas"), py::arg("theta") = 0.0);
    m.def("svetlichny_max", [](const DensityMatrix &rho3) { return svetlichny_max(rho3).value; });
    m.def("svetlichny_upper_bound",
          [](const DensityMatrix &rho3) { return svetlichny_upper_bound(rho3); });
    m.def("concurrence", &concurrence);

    m.def("analyze",
          [](const std::string &state, std::optional<std::string> plane, std::optional<double> q) {
              app::AnalyzeOptions o;
              if (plane) o.plane = plane_arg(*plane);
              o.q = q;
              return json_to_py(app::to_json(app::analyze(app::load_state(state), o)));
          },
          py::arg("state"), py::arg("plane") = py::none(), py::arg("q") = py::none());
    m.def("reproduce",
          [](const std::string &target, const std::filesystem::path &out) {
              const auto t = app::target_from_name(target);
              if (!t) throw InvalidInput("unknown target '" + target + "'");
              return app::reproduce(*t, out);
          },
          py::arg("target"), py::arg("out"));
    m.def("compat_report", [] { return json_to_py(app::compat_json()); });
}
