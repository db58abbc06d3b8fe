// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/surface.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rsmom {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Jet2<double> taper_weight(double x, double half_length, double margin) {
  if (!(margin > 0.0) || !(margin < half_length))
    throw std::invalid_argument("taper_weight: need 0 < margin < half_length");
  double s = margin / 3.0;
  double u = (x + half_length - margin) / s;
  double v = (half_length - margin - x) / s;
  // w = A(u) B(v) with A = (1+tanh)/2; d/dx u = 1/s, d/dx v = -1/s.
  double tu = std::tanh(u), tv = std::tanh(v);
  double A = 0.5 * (1.0 + tu), B = 0.5 * (1.0 + tv);
  double Ap = 0.5 * (1.0 - tu * tu), Bp = 0.5 * (1.0 - tv * tv);
  double App = -(1.0 - tu * tu) * tu, Bpp = -(1.0 - tv * tv) * tv;
  double w = A * B;
  double w1 = (Ap * B - A * Bp) / s;
  double w2 = (App * B - 2.0 * Ap * Bp + A * Bpp) / (s * s);
  return {w, w1, w2};
}

GaussianSurfaceModel::GaussianSurfaceModel(double half_length, double corr_length, std::uint64_t seed)
    : half_length_(half_length), corr_length_(corr_length) {
  if (!(half_length > 0.0)) throw std::invalid_argument("GaussianSurfaceModel: half_length must be positive");
  if (!(corr_length > 0.0)) throw std::invalid_argument("GaussianSurfaceModel: corr_length must be positive");

  // Spectral synthesis on a 4L-periodic extension: the Gaussian
  // autocorrelation exp(-eta^2/l^2) has spectral density l sqrt(pi)
  // exp(-q^2 l^2 / 4); keep modes until it falls below ~1e-16 of the peak.
  double period = 4.0 * half_length;
  double dq = 2.0 * kPi / period;
  double q_max = 12.2 / corr_length;
  int n_modes = static_cast<int>(std::ceil(q_max / dq)) + 1;

  q_.resize(n_modes);
  ca_.resize(n_modes);
  sa_.resize(n_modes);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int m = 0; m < n_modes; ++m) {
    double q = m * dq;
    double spectral = corr_length * std::sqrt(kPi) * std::exp(-0.25 * q * q * corr_length * corr_length);
    double var = (m == 0) ? spectral * dq / (2.0 * kPi) : spectral * dq / kPi;
    double sigma = std::sqrt(var);
    q_[m] = q;
    ca_[m] = sigma * gauss(rng);
    sa_[m] = sigma * gauss(rng);
  }
  sa_[0] = 0.0;  // sin(0 x) carries nothing
}

double GaussianSurfaceModel::raw(double x) const {
  double acc = 0.0;
  for (int m = 0; m < q_.size(); ++m) acc += ca_[m] * std::cos(q_[m] * x) + sa_[m] * std::sin(q_[m] * x);
  return acc;
}

Jet2<double> GaussianSurfaceModel::raw_jet(double x) const {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  for (int m = 0; m < q_.size(); ++m) {
    double q = q_[m];
    double c = std::cos(q * x), s = std::sin(q * x);
    double term = ca_[m] * c + sa_[m] * s;
    v += term;
    d1 += q * (-ca_[m] * s + sa_[m] * c);
    d2 -= q * q * term;
  }
  return {v, d1, d2};
}

Eigen::VectorXd generate_gaussian_surface(const Grid& grid, double corr_length, std::uint64_t seed) {
  if (!(corr_length > 0.0)) throw std::invalid_argument("generate_gaussian_surface: corr_length must be positive");
  if (grid.spacing() >= 0.5 * corr_length)
    throw std::invalid_argument("generate_gaussian_surface: grid spacing cannot resolve the correlation length");
  GaussianSurfaceModel model(grid.half_length, corr_length, seed);
  Eigen::VectorXd h(grid.n_panels);
  for (int i = 0; i < grid.n_panels; ++i) h[i] = model.raw(grid.midpoint(i));
  return h;
}

Eigen::VectorXd taper_edges(const Eigen::VectorXd& heights, const Grid& grid, double margin) {
  Eigen::VectorXd out(heights.size());
  for (int i = 0; i < heights.size(); ++i) out[i] = heights[i] * taper_weight(grid.midpoint(i), grid.half_length, margin).v;
  return out;
}

Eigen::VectorXd scale_to_peak_trough(const Eigen::VectorXd& heights, double target) {
  if (!(target > 0.0)) throw std::invalid_argument("scale_to_peak_trough: target must be positive");
  double range = heights.maxCoeff() - heights.minCoeff();
  if (!(range > 0.0)) throw std::invalid_argument("scale_to_peak_trough: degenerate flat surface");
  return heights * (target / range);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> finite_difference_derivatives(const Eigen::VectorXd& heights,
                                                                          const Grid& grid) {
  int n = static_cast<int>(heights.size());
  double dx = grid.spacing();
  Eigen::VectorXd d1(n), d2(n);
  auto at = [&](int i) -> double { return (i < 0 || i >= n) ? 0.0 : heights[i]; };
  for (int i = 0; i < n; ++i) {
    double m2 = at(i - 2), m1 = at(i - 1), p1 = at(i + 1), p2 = at(i + 2);
    d1[i] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * dx);
    d2[i] = (-p2 + 16.0 * p1 - 30.0 * heights[i] + 16.0 * m1 - m2) / (12.0 * dx * dx);
  }
  return {d1, d2};
}

double peak_trough_scale(const GaussianSurfaceModel& model, const Grid& grid, double margin,
                         double target) {
  if (target == 0.0) return 0.0;
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < grid.n_panels; ++i) {
    double x = grid.midpoint(i);
    double t = model.raw(x) * taper_weight(x, grid.half_length, margin).v;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
    if (i == 0) {
      lo = t;
      hi = t;
    }
  }
  double range = hi - lo;
  if (!(range > 0.0)) throw std::invalid_argument("peak_trough_scale: degenerate flat surface");
  return target / range;
}

SurfaceRealization realize(const GaussianSurfaceModel& model, const Grid& grid, double margin,
                           double scale) {
  SurfaceRealization s;
  s.grid = grid;
  s.corr_length = model.corr_length();
  s.h.resize(grid.n_panels);
  s.dh.resize(grid.n_panels);
  s.d2h.resize(grid.n_panels);
  for (int i = 0; i < grid.n_panels; ++i) {
    double x = grid.midpoint(i);
    Jet2<double> r = model.raw_jet(x);
    Jet2<double> w = taper_weight(x, grid.half_length, margin);
    s.h[i] = scale * (r.v * w.v);
    s.dh[i] = scale * (r.d1 * w.v + r.v * w.d1);
    s.d2h[i] = scale * (r.d2 * w.v + 2.0 * r.d1 * w.d1 + r.v * w.d2);
  }
  s.peak_to_trough = (grid.n_panels > 0) ? s.h.maxCoeff() - s.h.minCoeff() : 0.0;
  return s;
}

SurfaceRealization make_surface(const GaussianSurfaceModel& model, const Grid& grid, double margin,
                                double peak_to_trough) {
  double c = peak_trough_scale(model, grid, margin, peak_to_trough);
  return realize(model, grid, margin, c);
}

SurfaceRealization flat_surface(const Grid& grid) {
  SurfaceRealization s;
  s.grid = grid;
  s.h = Eigen::VectorXd::Zero(grid.n_panels);
  s.dh = Eigen::VectorXd::Zero(grid.n_panels);
  s.d2h = Eigen::VectorXd::Zero(grid.n_panels);
  return s;
}

}  // namespace rsmom
