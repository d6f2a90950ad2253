// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/cut_engine.hpp"
#include "bicut/model.hpp"
#include "bicut/report.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bicut {

enum class Method { branch_and_cut, cutting_plane };

struct SolverSettings {
  Method method = Method::branch_and_cut;
  /// Also separate at fractional node points (IF settings).
  bool separate_fractional = false;
  Strategy strategy = Strategy::O;
  double eps = kDefaultCutViolation;
  double time_limit = 600.0;
  std::uint64_t seed = 0;
  /// Throw if an integer bilevel-infeasible point yields no cut.  When false
  /// such points are counted in audit_misses and handled by branching (B&C)
  /// or a no-good row (cutting plane).
  bool strict = true;
  /// Count integer bilevel-infeasible points in audit_points; when the
  /// configured strategy finds no cut there, retry with strategy O before
  /// counting a miss.
  bool audit = false;

  /// I-O, IF-O, I-G, IF-G, CP-O or CP-G.
  std::string name() const;
};

/// Settings for one of the names accepted by SolverSettings::name().
/// Throws std::invalid_argument on an unknown name.
SolverSettings parse_setting(std::string_view name);

/// Raised on a point the theory rules out: an integer bilevel-infeasible
/// vertex without a cut, or an integer HPR point whose follower is infeasible.
class SolverInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Branch-and-cut over the continuous HPR with disjunctive cuts separated at
/// integer (and under IF settings fractional) node points.  Cuts found at the
/// root are global, all others local to the subtree.
SolveReport solve_branch_and_cut(const Instance& inst, const SolverSettings& settings);

/// Cutting-plane loop for all-binary instances: solve the HPR with the cuts
/// found so far to integer optimality, separate its optimum, repeat until no
/// cut is found.  Throws std::invalid_argument on a non-binary instance.
SolveReport solve_cutting_plane(const Instance& inst, const SolverSettings& settings);

/// Dispatches on settings.method.
SolveReport solve(const Instance& inst, const SolverSettings& settings);

}  // namespace bicut
