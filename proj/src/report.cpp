// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace bicut {

namespace {

double relative_gap(double upper, double lower, double z_star) {
  if (z_star == 0.0) return std::abs(upper - lower) <= 1e-9 ? 0.0 : 100.0;
  return std::clamp(100.0 * (upper - lower) / std::abs(z_star), 0.0, 100.0);
}

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::vector<double> as_list(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

LinearRow Cut::as_row() const {
  LinearRow row{Vector(alpha.size() + beta.size()), tau};
  row.coef << alpha, beta;
  return row;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::time_limit: return "time_limit";
  }
  return "unknown";
}

Gaps compute_gaps(std::optional<double> z_star, double lower_bound,
                  std::optional<double> root_z_star, double root_lower_bound) {
  Gaps g{100.0, 100.0};
  if (!z_star) return g;
  g.gap = relative_gap(*z_star, lower_bound, *z_star);
  if (root_z_star) g.rgap = relative_gap(*root_z_star, root_lower_bound, *z_star);
  return g;
}

std::string to_json(const SolveReport& r, int indent) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["Gap"] = r.gap;
  j["RGap"] = r.rgap;
  j["Nodes"] = r.nodes;
  j["nICut"] = r.n_icut;
  j["nFCut"] = r.n_fcut;
  j["tF"] = r.t_follower;
  j["tS"] = r.t_socp;
  j["status"] = std::string(to_string(r.status));
  j["setting"] = r.setting;
  j["z_star"] = number(r.z_star);
  j["lower_bound"] = number(r.lower_bound);
  if (r.incumbent) {
    j["x"] = as_list(r.incumbent->x);
    j["y"] = as_list(r.incumbent->y);
  } else {
    j["x"] = nullptr;
    j["y"] = nullptr;
  }
  j["cp_iterations"] = r.cp_iterations;
  j["root_z_star"] = r.root_z_star ? number(*r.root_z_star) : nlohmann::ordered_json(nullptr);
  j["root_lower_bound"] = number(r.root_lower_bound);
  if (!r.relaxation_values.empty()) j["relaxation_values"] = r.relaxation_values;
  auto cuts = nlohmann::ordered_json::array();
  for (const auto& c : r.cuts) {
    nlohmann::ordered_json cj;
    cj["alpha"] = as_list(c.alpha);
    cj["beta"] = as_list(c.beta);
    cj["tau"] = c.tau;
    cj["scope"] = c.scope == CutScope::global ? "global" : "local";
    cj["node"] = c.node_id;
    cj["violation"] = c.violation_at_source;
    cj["fractional"] = c.from_fractional;
    cuts.push_back(std::move(cj));
  }
  j["cuts"] = std::move(cuts);
  return j.dump(indent);
}

}  // namespace bicut
