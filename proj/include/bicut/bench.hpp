// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/report.hpp"

#include <string>
#include <vector>

namespace bicut {

/// One solved (instance, setting) pair.
struct BenchRecord {
  int n = 0;
  std::string setting;
  SolveReport report;
};

/// Arithmetic means over one (n, setting) group; n_sol counts optimal runs.
struct BenchRow {
  int n = 0;
  std::string setting;
  int count = 0;
  double t = 0.0;
  double gap = 0.0;
  double rgap = 0.0;
  double nodes = 0.0;
  double n_icut = 0.0;
  double n_fcut = 0.0;
  double t_follower = 0.0;
  double t_socp = 0.0;
  int n_sol = 0;
};

/// Rows ordered by n, then by setting in order of first appearance.
std::vector<BenchRow> aggregate(const std::vector<BenchRecord>& records);

/// Column names: n, setting, t, Gap, RGap, Nodes, nICut, nFCut, tF, tS, nSol.
std::vector<std::string> bench_columns();

/// Cell strings of one row, shared by both renderings.
std::vector<std::string> bench_cells(const BenchRow& row);

std::string render_table(const std::vector<BenchRow>& rows);
std::string render_csv(const std::vector<BenchRow>& rows);

}  // namespace bicut
