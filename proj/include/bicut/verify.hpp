// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"
#include "bicut/oracle.hpp"
#include "bicut/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bicut {

struct VerifyTolerances {
  /// |z* - oracle value| bound.
  double value = 1e-6;
  /// Largest violation of a global cut at a bilevel-feasible point.
  double cut_validity = 1e-7;
  /// Smallest violation of a cut at the point that produced it.
  double cut_violation = 1e-6;
};

struct VerifyOutcome {
  /// Set when the oracle ran.
  std::optional<OracleResult> oracle;
  /// Why the oracle was skipped, empty if it ran.
  std::string notice;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks `report` against the brute-force oracle when the lattice is within
/// kOracleGuard (optimal value, global cuts valid at every bilevel-feasible
/// point) and always checks the solver-only invariants: cut violation at
/// source, incumbent HPR-feasible and bilevel-feasible, objective and bound
/// consistent with z*.
VerifyOutcome verify_report(const Instance& inst, const SolveReport& report,
                            const VerifyTolerances& tol = {});

/// One-line description of a cut for failure messages.
std::string describe_cut(const Cut& cut);

}  // namespace bicut
