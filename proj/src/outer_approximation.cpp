// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/simplex.hpp"

namespace bicut {

std::vector<LinearRow> outer_approximate(const ConicRows& conic, const Vector& z, double tol) {
  std::vector<LinearRow> cuts;
  if (conic.empty()) return cuts;
  const Vector s = conic.coef * z - conic.rhs;
  int offset = 0;
  for (int k : conic.cones) {
    const auto head = conic.coef.row(offset);
    const double t = s[offset];
    const double norm = k > 1 ? s.segment(offset + 1, k - 1).norm() : 0.0;
    if (t < norm - tol) {
      LinearRow cut{head.transpose(), conic.rhs[offset]};
      if (norm > 0.0) {
        // t - (u/|u|)'u >= 0 in terms of z.
        const Vector dir = s.segment(offset + 1, k - 1) / norm;
        cut.coef -= conic.coef.middleRows(offset + 1, k - 1).transpose() * dir;
        cut.rhs -= dir.dot(conic.rhs.segment(offset + 1, k - 1));
      }
      cuts.push_back(std::move(cut));
    }
    offset += k;
  }
  return cuts;
}

}  // namespace bicut
