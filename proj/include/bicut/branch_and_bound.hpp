// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/relaxation.hpp"
#include "bicut/report.hpp"
#include "bicut/simplex.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace bicut {

/// Basis of a node LP together with the sizes of the row groups it covered,
/// so it can be mapped onto a later LP whose groups have grown.
struct WarmStart {
  Basis basis;
  std::size_t base_rows = 0;
  std::size_t cut_rows = 0;
  std::size_t outer_rows = 0;
  std::size_t local_rows = 0;
};

struct Node {
  int id = 0;
  int depth = 0;
  Vector lb;
  Vector ub;
  /// Cuts valid in this subtree only; inherited by the children.
  std::vector<LinearRow> local_cuts;
  /// Objective value of the parent LP.
  double bound = -std::numeric_limits<double>::infinity();
  std::shared_ptr<const WarmStart> warm;

  bool is_root() const { return depth == 0; }
};

struct IntegerVerdict {
  bool accept = true;
  std::vector<Cut> cuts;

  static IntegerVerdict accepted() { return {true, {}}; }
  static IntegerVerdict rejected(std::vector<Cut> cuts = {}) { return {false, std::move(cuts)}; }
};

/// Global cuts are appended to the relaxation's pool, local cuts to the
/// node's.  Cuts not violated by more than eps at the triggering point are
/// dropped.
struct Callbacks {
  std::function<IntegerVerdict(const Vector& z, const Node& node)> on_integer;
  std::function<std::vector<Cut>(const Vector& z, const Node& node)> on_fractional;
};

struct BBLimits {
  double time_limit = std::numeric_limits<double>::infinity();
  double eps = 1e-6;
  int max_cut_rounds = 50;
  /// Fractional separation at a node stops once the node bound gained less
  /// than tailing_gain * max(1, |bound|) over the last tailing_rounds rounds.
  int tailing_rounds = 3;
  double tailing_gain = 1e-3;
  /// Tolerance of the prune test  bound >= incumbent - prune_tolerance.
  double prune_tolerance = 1e-9;
};

/// Best-bound branch-and-bound with plunging over LP relaxations of `relax`.
/// Conic rows are handled by outer approximation (rows added to
/// relax.outer_rows); accepted global cuts are added to relax.cuts.
/// The report carries status, incumbent, bounds, node count and the root
/// snapshot; the cut counters and timers are left to the caller.
SolveReport solve_bb(PolyhedralRelaxation& relax, const Callbacks& callbacks = {},
                     const BBLimits& limits = {});

/// Children of `node` that split the most fractional integer variable of `z`
/// (smallest index on ties): (down, up) = (z_j <= floor, z_j >= ceil).
/// Throws std::logic_error if `z` is integral on the integer variables.
std::pair<Node, Node> branch(const Node& node, const Vector& z, const std::vector<bool>& integer);

/// Index chosen by branch(), or -1 if `z` is integral.
int select_branching_variable(const Vector& z, const std::vector<bool>& integer);

}  // namespace bicut
