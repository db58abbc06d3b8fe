// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace rsmom {

/// Uniform panel grid on [-L, L]: N panels, N+1 nodes, N midpoints.
struct Grid {
  double half_length = 0.0;
  int n_panels = 0;

  double spacing() const { return 2.0 * half_length / n_panels; }
  double node(int i) const { return i * spacing() - half_length; }
  double midpoint(int i) const { return node(i) + 0.5 * spacing(); }

  Eigen::VectorXd midpoints() const {
    Eigen::VectorXd x(n_panels);
    for (int i = 0; i < n_panels; ++i) x[i] = midpoint(i);
    return x;
  }

  Eigen::VectorXd nodes() const {
    Eigen::VectorXd x(n_panels + 1);
    for (int i = 0; i <= n_panels; ++i) x[i] = node(i);
    return x;
  }
};

inline Grid make_grid(double half_length, int n_panels) {
  if (n_panels < 1) throw std::invalid_argument("make_grid: need at least one panel");
  if (!(half_length > 0.0)) throw std::invalid_argument("make_grid: half length must be positive");
  return Grid{half_length, n_panels};
}

}  // namespace rsmom
