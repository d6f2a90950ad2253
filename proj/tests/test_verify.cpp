// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/drivers.hpp"
#include "bicut/generator.hpp"
#include "bicut/verify.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bicut;
using bicut::testing::vec;
using bicut::testing::worked_example;

TEST_CASE("solver reports on small instances pass verification") {
  const auto inst = worked_example();
  const auto report = solve(inst, parse_setting("I-O"));
  const auto outcome = verify_report(inst, report);
  CHECK(outcome.passed());
  REQUIRE(outcome.oracle.has_value());
  CHECK(outcome.notice.empty());

  const auto seeded = generate({8, 1, 3});
  const auto r = solve(seeded, parse_setting("IF-G"));
  CHECK(verify_report(seeded, r).passed());
}

TEST_CASE("a corrupted global cut is reported") {
  const auto inst = worked_example();
  auto report = solve(inst, parse_setting("I-G"));
  REQUIRE(verify_report(inst, report).passed());
  // x + y >= 2 removes the bilevel-feasible points (0,1) and (1,0).
  Cut bad;
  bad.alpha = vec({1});
  bad.beta = vec({1});
  bad.tau = 2;
  bad.violation_at_source = 1;
  report.cuts.push_back(bad);
  const auto outcome = verify_report(inst, report);
  REQUIRE_FALSE(outcome.passed());
  CHECK(outcome.failures.back().find("tau=2") != std::string::npos);

  // The same cut as a local cut is exempt from the global check.
  report.cuts.back().scope = CutScope::local;
  CHECK(verify_report(inst, report).passed());
}

TEST_CASE("wrong values and weak cuts are reported") {
  const auto inst = worked_example();
  auto report = solve(inst, parse_setting("I-O"));
  auto shifted = report;
  shifted.z_star += 1e-3;
  CHECK_FALSE(verify_report(inst, shifted).passed());

  auto weak = report;
  Cut c;
  c.alpha = vec({0});
  c.beta = vec({0});
  c.tau = -1;
  c.violation_at_source = 1e-9;
  weak.cuts.push_back(c);
  CHECK_FALSE(verify_report(inst, weak).passed());

  SolveReport empty;
  empty.status = SolveStatus::optimal;
  CHECK_FALSE(verify_report(inst, empty).passed());
}

TEST_CASE("large lattices skip the oracle") {
  const auto inst = generate({50, 0, 1});
  SolveReport stopped;
  stopped.status = SolveStatus::time_limit;
  const auto outcome = verify_report(inst, stopped);
  CHECK(outcome.passed());
  CHECK_FALSE(outcome.oracle.has_value());
  CHECK(outcome.notice.find("skipped") != std::string::npos);
}
