// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace bicut {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> aggregate(const std::vector<BenchRecord>& records) {
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.setting) == order.end()) order.push_back(r.setting);
  }
  std::map<std::pair<int, std::size_t>, BenchRow> groups;
  for (const auto& r : records) {
    const auto pos = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), r.setting) - order.begin());
    BenchRow& row = groups[{r.n, pos}];
    row.n = r.n;
    row.setting = r.setting;
    ++row.count;
    const SolveReport& s = r.report;
    row.t += s.t;
    row.gap += s.gap;
    row.rgap += s.rgap;
    row.nodes += static_cast<double>(s.nodes);
    row.n_icut += s.n_icut;
    row.n_fcut += s.n_fcut;
    row.t_follower += s.t_follower;
    row.t_socp += s.t_socp;
    if (s.status == SolveStatus::optimal) ++row.n_sol;
  }
  std::vector<BenchRow> rows;
  for (auto& [key, row] : groups) {
    const double k = row.count;
    for (double* v : {&row.t, &row.gap, &row.rgap, &row.nodes, &row.n_icut, &row.n_fcut,
                      &row.t_follower, &row.t_socp}) {
      *v /= k;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> bench_columns() {
  return {"n", "setting", "t", "Gap", "RGap", "Nodes", "nICut", "nFCut", "tF", "tS", "nSol"};
}

std::vector<std::string> bench_cells(const BenchRow& row) {
  return {std::to_string(row.n),   row.setting,
          fixed(row.t, 3),         fixed(row.gap, 2),
          fixed(row.rgap, 2),      fixed(row.nodes, 1),
          fixed(row.n_icut, 1),    fixed(row.n_fcut, 1),
          fixed(row.t_follower, 3), fixed(row.t_socp, 3),
          std::to_string(row.n_sol)};
}

std::string render_table(const std::vector<BenchRow>& rows) {
  std::vector<std::vector<std::string>> cells{bench_columns()};
  for (const auto& row : rows) cells.push_back(bench_cells(row));
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      const std::string pad(width[c] - line[c].size(), ' ');
      if (c == 1) {
        out << line[c] << pad;
      } else {
        out << pad << line[c];
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string render_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) out << (c ? "," : "") << line[c];
    out << "\n";
  };
  emit(bench_columns());
  for (const auto& row : rows) emit(bench_cells(row));
  return out.str();
}

}  // namespace bicut
