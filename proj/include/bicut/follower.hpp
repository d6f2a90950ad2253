// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"

#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>

namespace bicut {

enum class FollowerMode { to_optimality, stream };

struct FollowerQuery {
  Vector x_star;
  /// Only y with q(y) < cutoff are of interest.
  double cutoff = std::numeric_limits<double>::infinity();
  FollowerMode mode = FollowerMode::to_optimality;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class FollowerStatus { optimal, no_better_than_cutoff, infeasible, aborted, time_limit };

std::string_view to_string(FollowerStatus status);

struct FollowerResult {
  FollowerStatus status = FollowerStatus::infeasible;
  /// q(best_y) when a point below the cutoff was found.
  double phi = std::numeric_limits<double>::infinity();
  Vector best_y;
  long long nodes = 0;
  /// Number of incumbents delivered to the sink.
  int incumbents = 0;
};

/// Receives every strictly improving incumbent below the cutoff.  Returning
/// false aborts the search (stream mode).
using IncumbentSink = std::function<bool(const Vector& y, double q)>;

/// min q(y) s.t. a'x* + b'y >= f, C y >= u, lb_y <= y <= ub_y, y integer, by
/// branch-and-bound over conic relaxations solved with solve_conic.
FollowerResult solve_follower(const Instance& inst, const FollowerQuery& query,
                              const IncumbentSink& sink = {});

/// Phi(x): optimal follower value, +infinity if the follower is infeasible.
double phi(const Instance& inst, const Vector& x_star);

}  // namespace bicut
