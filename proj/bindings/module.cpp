// Copyright 2026 The prtb Authors
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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "prtb/caps.hpp"
#include "prtb/exactrcc.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/protocols.hpp"
#include "prtb/prtlp.hpp"
#include "prtb/rational.hpp"
#include "prtb/report.hpp"
#include "prtb/suite.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// Exact bridge between mpq_class and fractions.Fraction. Integers and
// Fractions convert losslessly; floats are rejected so no precision is lost
// silently.
template <>
struct type_caster<prtb::Rat> {
  PYBIND11_TYPE_CASTER(prtb::Rat, const_name("Fraction"));

  bool load(handle src, bool) {
    if (src.is_none() || PyFloat_Check(src.ptr())) return false;
    std::string text = py::str(src);
    auto parsed = prtb::try_parse_rat(text);
    if (!parsed) return false;
    value = *parsed;
    return true;
  }

  static handle cast(const prtb::Rat& src, return_value_policy, handle) {
    static object fraction =
        module_::import("fractions").attr("Fraction");
    return fraction(prtb::rat_str(src)).release();
  }
};

}  // namespace pybind11::detail

namespace {

using prtb::Caps;
using prtb::Rat;
using prtb::fnspec::PartialFunction;
using prtb::prtlp::AccuracyParams;

AccuracyParams make_accuracy(const Rat& eps, const std::optional<Rat>& delta) {
  if (delta) return AccuracyParams(eps, *delta);
  return AccuracyParams(eps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact computation of the one-way partition bound, zero-communication "
      "protocol compilation, boosting, and communication-complexity "
      "sandwich verification for small partial functions.";

  py::register_exception<prtb::InputError>(m, "InputError",
                                           PyExc_ValueError);
  py::register_exception<prtb::CapExceeded>(m, "CapExceeded",
                                            PyExc_RuntimeError);

  py::class_<Caps>(m, "Caps")
      .def(py::init<>())
      .def_readwrite("max_lp_vars", &Caps::max_lp_vars)
      .def_readwrite("pivot_cap", &Caps::pivot_cap)
      .def_readwrite("max_raw_msg_fns", &Caps::max_raw_msg_fns)
      .def_readwrite("max_strategies", &Caps::max_strategies)
      .def_readwrite("max_boost_t", &Caps::max_boost_t)
      .def_readwrite("max_rcc_cells", &Caps::max_rcc_cells)
      .def_readwrite("max_rcc_c", &Caps::max_rcc_c);

  py::class_<prtb::Report>(m, "Report")
      .def_property_readonly("ok", &prtb::Report::ok)
      .def("to_text", &prtb::Report::to_text)
      .def("__repr__", &prtb::Report::to_text);

  py::class_<prtb::CheckReport>(m, "CheckReport")
      .def_property_readonly("ok", &prtb::CheckReport::ok)
      .def("to_text", &prtb::CheckReport::to_text)
      .def("__repr__", &prtb::CheckReport::to_text);

  py::class_<PartialFunction>(m, "PartialFunction")
      .def(py::init<int, int, int, std::vector<int>>(), py::arg("nx"),
           py::arg("ny"), py::arg("nz"), py::arg("table"))
      .def_property_readonly("nx", &PartialFunction::nx)
      .def_property_readonly("ny", &PartialFunction::ny)
      .def_property_readonly("nz", &PartialFunction::nz)
      .def("defined", &PartialFunction::defined)
      .def("value", &PartialFunction::value)
      .def_property_readonly("defined_cells", &PartialFunction::defined_cells)
      .def(py::self == py::self)
      .def("__repr__", [](const PartialFunction& f) {
        return prtb::fnspec::serialize_function(f);
      });
  m.attr("UNDEFINED") = int(PartialFunction::kUndefined);

  m.def("parse_function", &prtb::fnspec::parse_function, py::arg("text"));
  m.def("serialize_function", &prtb::fnspec::serialize_function, py::arg("f"));
  m.def(
      "generate",
      [](const std::string& kind, int n, const Rat& density,
         std::uint64_t seed) {
        prtb::fnspec::GenParams params;
        params.density = density;
        params.seed = seed;
        return prtb::fnspec::generate(kind, n, params);
      },
      py::arg("kind"), py::arg("n"), py::arg("density") = Rat(1),
      py::arg("seed") = 0);
  m.def("permute", &prtb::fnspec::permute, py::arg("f"), py::arg("perm_x"),
        py::arg("perm_y"));

  py::class_<prtb::prtlp::PrimalSolution>(m, "PrimalSolution")
      .def_readonly("value", &prtb::prtlp::PrimalSolution::value)
      .def_readonly("set_weights", &prtb::prtlp::PrimalSolution::set_weights)
      .def_readonly("cell_weights",
                    &prtb::prtlp::PrimalSolution::cell_weights)
      .def("to_text", &prtb::prtlp::PrimalSolution::to_text)
      .def_static("from_text", &prtb::prtlp::PrimalSolution::from_text);

  py::class_<prtb::prtlp::DualWitness>(m, "DualWitness")
      .def_readonly("value", &prtb::prtlp::DualWitness::value)
      .def_readonly("mu", &prtb::prtlp::DualWitness::mu)
      .def_readonly("lambda_ay", &prtb::prtlp::DualWitness::lambda_ay)
      .def_readonly("lambda_x", &prtb::prtlp::DualWitness::lambda_x)
      .def("to_text", &prtb::prtlp::DualWitness::to_text)
      .def_static("from_text", &prtb::prtlp::DualWitness::from_text);

  py::class_<prtb::prtlp::PrtResult>(m, "PrtResult")
      .def_readonly("value", &prtb::prtlp::PrtResult::value)
      .def_readonly("solution", &prtb::prtlp::PrtResult::solution)
      .def_readonly("witness", &prtb::prtlp::PrtResult::witness);

  m.def(
      "compute_prt",
      [](const PartialFunction& f, const Rat& eps, const Caps& caps) {
        return prtb::prtlp::compute_prt(f, AccuracyParams(eps), caps);
      },
      py::arg("f"), py::arg("eps"), py::arg("caps") = Caps());
  m.def(
      "verify_solution",
      [](const PartialFunction& f, const Rat& eps,
         const prtb::prtlp::PrimalSolution& sol) {
        return prtb::prtlp::verify_solution(f, AccuracyParams(eps), sol);
      },
      py::arg("f"), py::arg("eps"), py::arg("solution"));
  m.def(
      "verify_witness",
      [](const PartialFunction& f, const Rat& eps,
         const prtb::prtlp::DualWitness& wit) {
        return prtb::prtlp::verify_witness(f, AccuracyParams(eps), wit);
      },
      py::arg("f"), py::arg("eps"), py::arg("witness"));

  py::class_<prtb::protocols::ZeroCommProtocol>(m, "ZeroCommProtocol")
      .def_readonly("declared_eff",
                    &prtb::protocols::ZeroCommProtocol::declared_eff)
      .def("validate", &prtb::protocols::ZeroCommProtocol::validate)
      .def("to_text", &prtb::protocols::ZeroCommProtocol::to_text)
      .def_static("from_text", &prtb::protocols::ZeroCommProtocol::from_text)
      .def_property_readonly("num_atoms",
                             [](const prtb::protocols::ZeroCommProtocol& p) {
                               return p.atoms.size();
                             });

  py::class_<prtb::protocols::OneWayProtocol>(m, "OneWayProtocol")
      .def_readonly("c", &prtb::protocols::OneWayProtocol::c)
      .def("validate", &prtb::protocols::OneWayProtocol::validate)
      .def("to_text", &prtb::protocols::OneWayProtocol::to_text)
      .def_static("from_text", &prtb::protocols::OneWayProtocol::from_text);

  py::class_<prtb::protocols::BoostedProtocol>(m, "BoostedProtocol")
      .def_readonly("repetitions",
                    &prtb::protocols::BoostedProtocol::repetitions)
      .def_readonly("c", &prtb::protocols::BoostedProtocol::c)
      .def_readonly("base", &prtb::protocols::BoostedProtocol::base)
      .def("materialize", &prtb::protocols::BoostedProtocol::materialize,
           py::arg("caps") = Caps())
      .def("to_text", &prtb::protocols::BoostedProtocol::to_text)
      .def_static("from_text", &prtb::protocols::BoostedProtocol::from_text);

  py::class_<prtb::protocols::ProtocolStats>(m, "ProtocolStats")
      .def_readonly("eff", &prtb::protocols::ProtocolStats::eff)
      .def_readonly("worst_err", &prtb::protocols::ProtocolStats::worst_err)
      .def_readonly("eff_uniform",
                    &prtb::protocols::ProtocolStats::eff_uniform)
      .def_readonly("has_undefined_err",
                    &prtb::protocols::ProtocolStats::has_undefined_err)
      .def_readonly("per_input_eff",
                    &prtb::protocols::ProtocolStats::per_input_eff)
      .def_readonly("per_input_err",
                    &prtb::protocols::ProtocolStats::per_input_err);

  py::class_<prtb::protocols::EstimatedCell>(m, "EstimatedCell")
      .def_readonly("eff_estimate",
                    &prtb::protocols::EstimatedCell::eff_estimate)
      .def_readonly("eff_half_width",
                    &prtb::protocols::EstimatedCell::eff_half_width)
      .def_readonly("err_estimate",
                    &prtb::protocols::EstimatedCell::err_estimate)
      .def_readonly("err_half_width",
                    &prtb::protocols::EstimatedCell::err_half_width)
      .def_readonly("trials", &prtb::protocols::EstimatedCell::trials)
      .def_readonly("non_abort", &prtb::protocols::EstimatedCell::non_abort);

  py::class_<prtb::protocols::SimulationResult>(m, "SimulationResult")
      .def_readonly("cells", &prtb::protocols::SimulationResult::cells)
      .def("to_text", &prtb::protocols::SimulationResult::to_text);

  m.def("compile_protocol", &prtb::protocols::compile_protocol,
        py::arg("solution"));
  m.def("extract_weights", &prtb::protocols::extract_weights,
        py::arg("protocol"));
  m.def("oneway_to_zerocomm", &prtb::protocols::oneway_to_zerocomm,
        py::arg("protocol"));
  m.def(
      "boost",
      [](const prtb::protocols::ZeroCommProtocol& p, const PartialFunction& f,
         const Rat& eps, const Rat& delta, const Caps& caps) {
        return prtb::protocols::boost(p, f, AccuracyParams(eps, delta), caps);
      },
      py::arg("protocol"), py::arg("f"), py::arg("eps"), py::arg("delta"),
      py::arg("caps") = Caps());

  m.def("exact_stats",
        py::overload_cast<const prtb::protocols::ZeroCommProtocol&,
                          const PartialFunction&>(
            &prtb::protocols::exact_stats),
        py::arg("protocol"), py::arg("f"));
  m.def("exact_stats",
        py::overload_cast<const prtb::protocols::OneWayProtocol&,
                          const PartialFunction&>(
            &prtb::protocols::exact_stats),
        py::arg("protocol"), py::arg("f"));
  m.def("exact_stats",
        py::overload_cast<const prtb::protocols::BoostedProtocol&,
                          const PartialFunction&>(
            &prtb::protocols::exact_stats),
        py::arg("protocol"), py::arg("f"));

  m.def("simulate",
        py::overload_cast<const prtb::protocols::ZeroCommProtocol&,
                          const PartialFunction&, std::int64_t, std::uint64_t>(
            &prtb::protocols::simulate),
        py::arg("protocol"), py::arg("f"), py::arg("samples"), py::arg("seed"));
  m.def("simulate",
        py::overload_cast<const prtb::protocols::OneWayProtocol&,
                          const PartialFunction&, std::int64_t, std::uint64_t>(
            &prtb::protocols::simulate),
        py::arg("protocol"), py::arg("f"), py::arg("samples"), py::arg("seed"));
  m.def("simulate",
        py::overload_cast<const prtb::protocols::BoostedProtocol&,
                          const PartialFunction&, std::int64_t, std::uint64_t>(
            &prtb::protocols::simulate),
        py::arg("protocol"), py::arg("f"), py::arg("samples"), py::arg("seed"));

  py::class_<prtb::exactrcc::RccResult>(m, "RccResult")
      .def_readonly("c_star", &prtb::exactrcc::RccResult::c_star)
      .def_readonly("game_values", &prtb::exactrcc::RccResult::game_values)
      .def_readonly("optimal_mix", &prtb::exactrcc::RccResult::optimal_mix);

  m.def(
      "exact_rcc",
      [](const PartialFunction& f, const Rat& eps, const Caps& caps) {
        return prtb::exactrcc::exact_rcc(f, AccuracyParams(eps), caps);
      },
      py::arg("f"), py::arg("eps"), py::arg("caps") = Caps());
  m.def(
      "min_error_at_cost",
      [](const PartialFunction& f, int c, const Caps& caps) {
        auto res = prtb::exactrcc::min_error_at_cost(f, c, caps);
        return py::make_tuple(res.value, res.mix);
      },
      py::arg("f"), py::arg("c"), py::arg("caps") = Caps());
  m.def(
      "verify_sandwich",
      [](const PartialFunction& f, const Rat& eps, const Rat& delta,
         const Caps& caps) {
        return prtb::exactrcc::verify_sandwich(f, AccuracyParams(eps, delta),
                                               caps);
      },
      py::arg("f"), py::arg("eps"), py::arg("delta"), py::arg("caps") = Caps());

  m.def("run_suite", &prtb::suite::run_all, py::arg("caps") = Caps());
}
