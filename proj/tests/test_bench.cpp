// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/bench.hpp"
#include "doctest.h"

#include <sstream>

using namespace bicut;

namespace {

BenchRecord record(int n, const std::string& setting, double t, long long nodes, SolveStatus status) {
  BenchRecord r{n, setting, {}};
  r.report.status = status;
  r.report.t = t;
  r.report.nodes = nodes;
  r.report.gap = status == SolveStatus::optimal ? 0.0 : 50.0;
  r.report.n_icut = 3;
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string cell;
  if (sep == ' ') {
    while (in >> cell) out.push_back(cell);
  } else {
    while (std::getline(in, cell, sep)) out.push_back(cell);
  }
  return out;
}

}  // namespace

TEST_CASE("a single instance gives its raw values") {
  const auto rows = aggregate({record(8, "I-G", 1.5, 7, SolveStatus::optimal)});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].t == 1.5);
  CHECK(rows[0].nodes == 7.0);
  CHECK(rows[0].n_icut == 3.0);
  CHECK(rows[0].n_sol == 1);
  CHECK(rows[0].count == 1);
}

TEST_CASE("groups by n and setting with arithmetic means") {
  const auto rows = aggregate({record(20, "I-O", 1, 10, SolveStatus::optimal),
                               record(8, "I-G", 2, 4, SolveStatus::optimal),
                               record(20, "I-O", 3, 30, SolveStatus::time_limit),
                               record(20, "I-G", 5, 6, SolveStatus::optimal),
                               record(8, "I-O", 4, 2, SolveStatus::optimal)});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 8);
  CHECK(rows[0].setting == "I-O");
  CHECK(rows[1].setting == "I-G");
  CHECK(rows[2].n == 20);
  CHECK(rows[2].setting == "I-O");
  CHECK(rows[2].t == 2.0);
  CHECK(rows[2].nodes == 20.0);
  CHECK(rows[2].gap == 25.0);
  CHECK(rows[2].n_sol == 1);
  CHECK(rows[3].n_sol == 1);
}

TEST_CASE("text table and CSV carry the same cells in the same order") {
  const auto rows = aggregate({record(12, "IF-G", 0.25, 9, SolveStatus::optimal),
                               record(12, "CP-O", 0.125, 3, SolveStatus::optimal)});
  std::istringstream text(render_table(rows));
  std::istringstream csv(render_csv(rows));
  std::string tl, cl;
  int lines = 0;
  while (std::getline(text, tl) && std::getline(csv, cl)) {
    CHECK(split(tl, ' ') == split(cl, ','));
    ++lines;
  }
  CHECK(lines == 3);
  CHECK(split(render_csv(rows).substr(0, render_csv(rows).find('\n')), ',') == bench_columns());
}
