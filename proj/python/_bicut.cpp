// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/drivers.hpp"
#include "bicut/generator.hpp"
#include "bicut/instance_io.hpp"
#include "bicut/oracle.hpp"
#include "bicut/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace bicut;

PYBIND11_MODULE(_bicut, m) {
  m.doc() = "Integer bilevel programs with a convex quadratic follower";

  py::register_exception<InstanceFormatError>(m, "InstanceFormatError", PyExc_ValueError);
  py::register_exception<OracleRefused>(m, "OracleRefused", PyExc_RuntimeError);
  py::register_exception<SolverInvariantError>(m, "SolverInvariantError", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_readonly("n1", &Instance::n1)
      .def_readonly("n2", &Instance::n2)
      .def_readonly("c", &Instance::c)
      .def_readonly("d", &Instance::d)
      .def_readonly("a", &Instance::a)
      .def_readonly("b", &Instance::b)
      .def_readonly("f", &Instance::f)
      .def_readonly("V", &Instance::V)
      .def_readonly("g", &Instance::g)
      .def_readonly("lb", &Instance::lb)
      .def_readonly("ub", &Instance::ub)
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m1", &Instance::m1)
      .def("is_binary", &Instance::is_binary)
      .def("to_json", [](const Instance& inst) { return instance_to_json(inst); })
      .def_static("from_json", &instance_from_json, py::arg("text"))
      .def("__eq__", &Instance::operator==)
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n1=" + std::to_string(inst.n1) + " n2=" + std::to_string(inst.n2) +
               " m1=" + std::to_string(inst.m1()) + ">";
      });

  m.def("read_instance", &read_instance, py::arg("path"));
  m.def("write_instance", &write_instance, py::arg("instance"), py::arg("path"));
  m.def(
      "generate",
      [](int n, int m1, std::uint64_t seed) { return generate({n, m1, seed}); },
      py::arg("n"), py::arg("m1") = 0, py::arg("seed") = 0);
  m.def("evaluate_q", &evaluate_q, py::arg("instance"), py::arg("y"));

  py::class_<Point>(m, "Point")
      .def_readonly("x", &Point::x)
      .def_readonly("y", &Point::y);

  py::class_<Cut>(m, "Cut")
      .def_readonly("alpha", &Cut::alpha)
      .def_readonly("beta", &Cut::beta)
      .def_readonly("tau", &Cut::tau)
      .def_property_readonly("scope",
                             [](const Cut& c) { return c.scope == CutScope::global ? "global" : "local"; })
      .def_readonly("violation_at_source", &Cut::violation_at_source)
      .def_readonly("from_fractional", &Cut::from_fractional);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("status", [](const SolveReport& r) { return std::string(to_string(r.status)); })
      .def_readonly("setting", &SolveReport::setting)
      .def_readonly("incumbent", &SolveReport::incumbent)
      .def_readonly("z_star", &SolveReport::z_star)
      .def_readonly("lower_bound", &SolveReport::lower_bound)
      .def_readonly("t", &SolveReport::t)
      .def_readonly("gap", &SolveReport::gap)
      .def_readonly("rgap", &SolveReport::rgap)
      .def_readonly("nodes", &SolveReport::nodes)
      .def_readonly("n_icut", &SolveReport::n_icut)
      .def_readonly("n_fcut", &SolveReport::n_fcut)
      .def_readonly("t_follower", &SolveReport::t_follower)
      .def_readonly("t_socp", &SolveReport::t_socp)
      .def_readonly("cp_iterations", &SolveReport::cp_iterations)
      .def_readonly("cuts", &SolveReport::cuts)
      .def_readonly("relaxation_values", &SolveReport::relaxation_values)
      .def("to_json", [](const SolveReport& r) { return to_json(r); });

  m.def(
      "solve",
      [](const Instance& inst, const std::string& setting, double time_limit, double eps) {
        SolverSettings s = parse_setting(setting);
        s.time_limit = time_limit;
        s.eps = eps;
        py::gil_scoped_release release;
        return solve(inst, s);
      },
      py::arg("instance"), py::arg("setting") = "I-G", py::arg("time_limit") = 600.0,
      py::arg("eps") = kDefaultCutViolation);

  py::class_<OracleResult>(m, "OracleResult")
      .def_property_readonly("status", [](const OracleResult& o) { return std::string(to_string(o.status)); })
      .def_readonly("value", &OracleResult::value)
      .def_readonly("point", &OracleResult::point)
      .def_readonly("bilevel_feasible", &OracleResult::bilevel_feasible);

  m.def("brute_force_solve", &brute_force_solve, py::arg("instance"),
        py::arg("list_feasible") = false);
  m.def("lattice_size", &lattice_size, py::arg("instance"));

  py::class_<VerifyOutcome>(m, "VerifyOutcome")
      .def_readonly("oracle", &VerifyOutcome::oracle)
      .def_readonly("notice", &VerifyOutcome::notice)
      .def_readonly("failures", &VerifyOutcome::failures)
      .def_property_readonly("passed", &VerifyOutcome::passed);

  m.def(
      "verify_report",
      [](const Instance& inst, const SolveReport& r) { return verify_report(inst, r); },
      py::arg("instance"), py::arg("report"));

  m.attr("SETTINGS") = py::make_tuple("I-O", "IF-O", "I-G", "IF-G", "CP-O", "CP-G");
}
