// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace bicut {

/// Largest number of lattice points (x and y boxes together) enumerated.
inline constexpr std::uint64_t kOracleGuard = std::uint64_t{1} << 24;

/// Thrown when an instance is too large to enumerate.
class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleStatus { optimal, infeasible };

std::string_view to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::infeasible;
  double value = 0.0;
  Point point;
  /// Every bilevel-feasible point, filled on request.
  std::vector<Point> bilevel_feasible;
};

/// Number of integer points in the x box times those in the y box, saturated
/// at UINT64_MAX.
std::uint64_t lattice_size(const Instance& inst);

/// Optimistic bilevel optimum by complete enumeration.  Throws OracleRefused
/// if lattice_size(inst) exceeds kOracleGuard.
OracleResult brute_force_solve(const Instance& inst, bool list_feasible = false);

}  // namespace bicut
