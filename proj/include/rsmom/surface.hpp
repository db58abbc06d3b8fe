// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>

#include "rsmom/grid.hpp"
#include "rsmom/jet.hpp"

namespace rsmom {

/// A sampled rough surface: heights plus first and second derivatives at the
/// grid midpoints.
struct SurfaceRealization {
  Grid grid;
  Eigen::VectorXd h;
  Eigen::VectorXd dh;
  Eigen::VectorXd d2h;
  double corr_length = 0.0;
  double peak_to_trough = 0.0;
};

/// Edge taper weight w(x) and its derivatives. w ramps from ~0 at +-L to ~1
/// inside a margin-wide transition band with smoothing width margin/3.
Jet2<double> taper_weight(double x, double half_length, double margin);

/// Stationary Gaussian random field with autocorrelation exp(-eta^2/l^2),
/// realized as a finite cosine/sine series on a 4L-periodic extension so the
/// same draw can be evaluated (with analytic derivatives) at any x. The mode
/// set depends only on (half_length, corr_length, seed), so resampling the
/// same realization on a finer grid stays consistent.
class GaussianSurfaceModel {
 public:
  GaussianSurfaceModel(double half_length, double corr_length, std::uint64_t seed);

  double raw(double x) const;
  Jet2<double> raw_jet(double x) const;

  double half_length() const { return half_length_; }
  double corr_length() const { return corr_length_; }

 private:
  double half_length_;
  double corr_length_;
  Eigen::VectorXd q_;   // mode wavenumbers
  Eigen::VectorXd ca_;  // cosine amplitudes
  Eigen::VectorXd sa_;  // sine amplitudes
};

/// Raw Gaussian-correlated heights at the grid midpoints. Deterministic under
/// (grid, corr_length, seed). Throws when the grid cannot resolve the
/// correlation length (spacing >= corr_length / 2).
Eigen::VectorXd generate_gaussian_surface(const Grid& grid, double corr_length, std::uint64_t seed);

/// Multiplies the sampled heights by the taper weight. Requires 0 < margin < L.
Eigen::VectorXd taper_edges(const Eigen::VectorXd& heights, const Grid& grid, double margin);

/// Rescales so that max - min equals `target` exactly. Throws for flat input.
Eigen::VectorXd scale_to_peak_trough(const Eigen::VectorXd& heights, double target);

/// First and second derivatives of midpoint-sampled heights by 4th-order
/// central differences, with zero ghost values beyond the (tapered) ends.
std::pair<Eigen::VectorXd, Eigen::VectorXd> finite_difference_derivatives(const Eigen::VectorXd& heights,
                                                                          const Grid& grid);

/// Scale factor that brings the tapered model to the requested peak-to-trough
/// on the given grid (0 stays 0: flat fixture).
double peak_trough_scale(const GaussianSurfaceModel& model, const Grid& grid, double margin,
                         double target);

/// Sample the tapered, scaled model on a grid with analytic derivatives.
SurfaceRealization realize(const GaussianSurfaceModel& model, const Grid& grid, double margin,
                           double scale);

/// Convenience: realize with the scale computed on the same grid.
SurfaceRealization make_surface(const GaussianSurfaceModel& model, const Grid& grid, double margin,
                                double peak_to_trough);

/// Identically zero surface (degenerate fixture used by the forward-solver
/// oracles).
SurfaceRealization flat_surface(const Grid& grid);

}  // namespace rsmom
