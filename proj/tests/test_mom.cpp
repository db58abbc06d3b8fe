// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "rsmom/mom.hpp"
#include "rsmom/surface.hpp"

using namespace rsmom;

namespace {

constexpr double kPi = 3.14159265358979323846;

SurfaceSamples<double> to_samples(const SurfaceRealization& s) {
  SurfaceSamples<double> out;
  out.h.assign(s.h.data(), s.h.data() + s.h.size());
  out.dh.assign(s.dh.data(), s.dh.data() + s.dh.size());
  out.d2h.assign(s.d2h.data(), s.d2h.data() + s.d2h.size());
  return out;
}

std::complex<double> to_c(const Cxd& z) { return {z.re, z.im}; }

// Analytic sine fixture with exact derivatives.
struct SineSurface {
  double amp, q;
  double h(double x) const { return amp * std::sin(q * x); }
  double dh(double x) const { return amp * q * std::cos(q * x); }
  double d2h(double x) const { return -amp * q * q * std::sin(q * x); }
  SurfaceSamples<double> sample(const Grid& g) const {
    SurfaceSamples<double> s;
    for (int i = 0; i < g.n_panels; ++i) {
      double x = g.midpoint(i);
      s.h.push_back(h(x));
      s.dh.push_back(dh(x));
      s.d2h.push_back(d2h(x));
    }
    return s;
  }
};

}  // namespace

TEST_CASE("incident plane wave") {
  ScatterProblem pb;
  pb.k = 2.0 * kPi;
  pb.alpha = -kPi / 4.0;
  Eigen::VectorXcd f = incident_field(pb, {{0.0, 0.0}, {1.3, 0.7}, {-2.0, 4.0}});
  CHECK(f[0].real() == doctest::Approx(1.0));
  CHECK(f[0].imag() == doctest::Approx(0.0));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(f[i]) == doctest::Approx(1.0).epsilon(1e-12));

  pb.alpha = -kPi / 2.0;  // straight down: independent of x
  Eigen::VectorXcd g = incident_field(pb, {{0.0, 1.0}, {5.0, 1.0}});
  CHECK(g[0].real() == doctest::Approx(g[1].real()).epsilon(1e-12));
  CHECK(g[0].imag() == doctest::Approx(g[1].imag()).epsilon(1e-12));
  CHECK(g[0] == std::complex<double>(std::cos(-2.0 * kPi), std::sin(-2.0 * kPi)));
}

TEST_CASE("Dirichlet assembly on a flat plate") {
  ScatterProblem pb;
  pb.pol = Polarization::TE;
  pb.k = 2.0 * kPi;
  pb.zeta = 0.5;
  pb.grid = make_grid(8.0, 480);
  SurfaceSamples<double> s = to_samples(flat_surface(pb.grid));

  CxMat<double> A, B;
  assemble_dirichlet(pb, s, A, B);
  const int n = pb.grid.n_panels;
  const double dx = pb.grid.spacing();

  // Off-diagonal entries against the pointwise kernel and against an
  // adaptive quadrature of the panel integral, on a grid fine enough that
  // the oscillatory truncation sits below the bound (k dx ~ 0.2). The
  // log-kernel part leaves an irreducible ~2% bias at |n - l| = 2 that no
  // refinement removes, hence the looser bound right next to the diagonal.
  for (int row : {5, 160, 300}) {
    for (int l : {0, 80, 240, 456}) {
      int sep = std::abs(row - l);
      if (sep < 2) continue;
      double tol = sep >= 3 ? 0.02 : 0.03;
      double d = std::abs(pb.grid.midpoint(row) - pb.grid.midpoint(l));
      Cxd approx = times_i(hankel0(pb.k * d)) * (0.25 * dx);
      CHECK(std::abs(to_c(A(row, l)) - to_c(approx)) < tol * std::abs(to_c(approx)));

      double xr = pb.grid.midpoint(row);
      auto integrand = [&](double xp) {
        return to_c(times_i(hankel0(pb.k * std::abs(xr - xp))) * 0.25);
      };
      std::complex<double> oracle =
          oracle::adaptive_simpson(std::function<std::complex<double>(double)>(integrand), pb.grid.node(l),
                                   pb.grid.node(l + 1), 1e-10);
      CHECK(std::abs(to_c(A(row, l)) - oracle) < tol * std::abs(oracle));
    }
  }
  // Two adjacent-panel spot checks at the documented looser bound.
  for (int row : {200}) {
    for (int l : {198, 202}) {
      double d = std::abs(pb.grid.midpoint(row) - pb.grid.midpoint(l));
      Cxd approx = times_i(hankel0(pb.k * d)) * (0.25 * dx);
      CHECK(std::abs(to_c(A(row, l)) - to_c(approx)) < 0.03 * std::abs(to_c(approx)));
    }
  }

  // Flat-surface symmetry.
  for (int i : {1, 7, 130})
    for (int j : {2, 19, 410}) CHECK(std::abs(to_c(A(i, j)) - to_c(A(j, i))) < 1e-12);

  // Self term against a singularity-splitting quadrature: adaptive Simpson
  // away from the midpoint plus the closed-form log integral over a tiny
  // central window.
  for (int row : {3, 255}) {
    double xr = pb.grid.midpoint(row);
    double a = pb.grid.node(row), b = pb.grid.node(row + 1);
    double eps = 1e-7 * dx;
    auto integrand = [&](double xp) {
      return to_c(times_i(hankel0(pb.k * std::abs(xr - xp))) * 0.25);
    };
    std::function<std::complex<double>(double)> fi = integrand;
    std::complex<double> left = oracle::adaptive_simpson(fi, a, xr - eps, 1e-12);
    std::complex<double> right = oracle::adaptive_simpson(fi, xr + eps, b, 1e-12);
    // Central sliver: (i/4) integral of 1 + (2i/pi)(ln(k|u|/2)+gamma) du.
    double g = 0.57721566490153286;
    double ln_term = 2.0 * eps * (std::log(0.5 * pb.k * eps) - 1.0 + g);
    std::complex<double> center = std::complex<double>(0, 0.25) *
                                  (2.0 * eps + std::complex<double>(0, 2.0 / kPi) * ln_term);
    std::complex<double> oracle_val = left + right + center;
    CHECK(std::abs(to_c(A(row, row)) - oracle_val) < 0.01 * std::abs(oracle_val));
  }

  // Observation row toward a high line: |entry| ~ d^{-1/2} panel decay.
  {
    ScatterProblem hi = pb;
    hi.zeta = 10.0;
    CxMat<double> A2, B2;
    assemble_dirichlet(hi, s, A2, B2);
    int row = n / 2;
    double xr = hi.grid.midpoint(row);
    auto dist = [&](int l) {
      double dxl = xr - hi.grid.midpoint(l);
      return std::sqrt(dxl * dxl + hi.zeta * hi.zeta);
    };
    double r1 = std::abs(to_c(B2(row, n / 2)));
    double r2 = std::abs(to_c(B2(row, 2)));
    CHECK(r2 / r1 == doctest::Approx(std::sqrt(dist(n / 2) / dist(2))).epsilon(0.03));
  }
}

TEST_CASE("Neumann assembly: flat plate is exactly half the identity") {
  ScatterProblem pb;
  pb.pol = Polarization::TM;
  pb.k = 2.0 * kPi;
  pb.zeta = 0.5;
  pb.grid = make_grid(8.0, 48);
  SurfaceSamples<double> s = to_samples(flat_surface(pb.grid));

  CxMat<double> A, B;
  assemble_neumann(pb, s, A, B);
  for (int i = 0; i < 48; ++i)
    for (int j = 0; j < 48; ++j) {
      if (i == j) {
        CHECK(A(i, j).re == doctest::Approx(0.5));
        CHECK(A(i, j).im == doctest::Approx(0.0));
      } else {
        CHECK(std::abs(to_c(A(i, j))) == doctest::Approx(0.0));
      }
    }

  // Forward solve: the surface field doubles the incident field.
  CxVec<double> psi_i = incident_on_surface(pb, s);
  CxVec<double> y = linsolve(A, psi_i);
  for (int i = 0; i < 48; ++i) {
    CHECK(y[i].re == doctest::Approx(2.0 * psi_i[i].re).epsilon(1e-10));
    CHECK(y[i].im == doctest::Approx(2.0 * psi_i[i].im).epsilon(1e-10));
  }
}

TEST_CASE("Neumann self term on a curved surface vs refined quadrature") {
  SineSurface sine{0.15, 2.0 * kPi / 3.0};
  ScatterProblem pb;
  pb.pol = Polarization::TM;
  pb.k = 2.0 * kPi;
  pb.zeta = 1.0;
  pb.grid = make_grid(8.0, 240);
  SurfaceSamples<double> s = sine.sample(pb.grid);

  CxMat<double> A, B;
  assemble_neumann(pb, s, A, B);

  for (int row : {60, 120, 133}) {
    double xr = pb.grid.midpoint(row);
    Eigen::Vector2d p{xr, sine.h(xr)};
    double a = pb.grid.node(row), b = pb.grid.node(row + 1);
    // The double-layer kernel is continuous on a C^2 curve; integrate it with
    // the exact surface data, stepping over a tiny window at the target where
    // the kernel takes its curvature limit.
    double eps = 1e-5 * pb.grid.spacing();
    auto integrand = [&](double xp) {
      Cxd k = green_normal_derivative(pb.k, p, {xp, sine.h(xp)}, sine.dh(xp));
      return to_c(k) * std::sqrt(1.0 + sine.dh(xp) * sine.dh(xp));
    };
    std::function<std::complex<double>(double)> fi = integrand;
    std::complex<double> left = oracle::adaptive_simpson(fi, a, xr - eps, 1e-12);
    std::complex<double> right = oracle::adaptive_simpson(fi, xr + eps, b, 1e-12);
    double kappa = sine.d2h(xr) / std::pow(1.0 + sine.dh(xr) * sine.dh(xr), 1.5);
    double jac = std::sqrt(1.0 + sine.dh(xr) * sine.dh(xr));
    std::complex<double> center = 2.0 * eps * kappa / (4.0 * kPi) * jac;
    std::complex<double> self_integral = left + right + center;

    std::complex<double> impl_self = 0.5 - to_c(A(row, row));
    CHECK(std::abs(impl_self - self_integral) < 0.05 * std::abs(self_integral));
  }
}

TEST_CASE("solve_linear contract") {
  {
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(4, 4);
    Eigen::VectorXcd b(4);
    b << std::complex<double>(1, 2), std::complex<double>(0, -1), 3.0, std::complex<double>(-2, 0.5);
    CHECK((solve_linear(I, b) - b).norm() == doctest::Approx(0.0));
  }
  {
    Eigen::MatrixXcd A(2, 2);
    A << 2.0, 0.0, 0.0, std::complex<double>(0, 1);
    Eigen::VectorXcd b(2);
    b << 2.0, std::complex<double>(0, 1);
    Eigen::VectorXcd y = solve_linear(A, b);
    CHECK(y[0].real() == doctest::Approx(1.0));
    CHECK(y[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(y[0].imag()) < 1e-15);
    CHECK(std::abs(y[1].imag()) < 1e-15);
  }
  {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::MatrixXcd A(50, 50);
    Eigen::VectorXcd b(50);
    for (int i = 0; i < 50; ++i) {
      b[i] = {u(rng), u(rng)};
      for (int j = 0; j < 50; ++j) A(i, j) = std::complex<double>(u(rng) + (i == j ? 10.0 : 0.0), u(rng));
    }
    Eigen::VectorXcd y = solve_linear(A, b);
    CHECK((A * y - b).norm() / b.norm() < 1e-10);
  }
  {
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(3, 3);
    S(0, 0) = 1.0;
    S(1, 1) = 1.0;  // rank 2
    Eigen::VectorXcd b = Eigen::VectorXcd::Ones(3);
    CHECK_THROWS_AS(solve_linear(S, b), SingularMatrixError);
  }
}

TEST_CASE("flat plate reflection: image oracle for both polarizations") {
  for (auto pol : {Polarization::TE, Polarization::TM}) {
    ScatterProblem pb;
    pb.pol = pol;
    pb.k = 2.0 * kPi;
    pb.alpha = -kPi / 4.0;
    pb.zeta = 0.5;
    pb.grid = make_grid(8.0, 256);
    SurfaceSamples<double> s = to_samples(flat_surface(pb.grid));

    CxVec<double> psi = scattered_field(pb, s);

    double refl = (pol == Polarization::TE) ? -1.0 : 1.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < pb.grid.n_panels; ++i) {
      double x = pb.grid.midpoint(i);
      if (std::abs(x) > 4.0) continue;  // interior half
      double phase = pb.k * (std::cos(pb.alpha) * x - std::sin(pb.alpha) * pb.zeta);
      std::complex<double> expect = refl * std::exp(std::complex<double>(0, phase));
      num += std::norm(to_c(psi[i]) - expect);
      den += std::norm(expect);
    }
    CHECK(std::sqrt(num / den) < 0.05);
  }
}

TEST_CASE("flat plate TE: total field vanishes just above the surface") {
  // Evaluating the single layer two panel widths above the plate keeps the
  // nearest-panel trapezium honest, so the panel width must track zeta. The
  // exact standing-wave total at height z is 2 sin(k |sin a| z), already 8.9%
  // at 45 degrees; a 15-degree grazing angle keeps the measured residual a
  // genuine smallness test.
  ScatterProblem pb;
  pb.pol = Polarization::TE;
  pb.k = 2.0 * kPi;
  pb.alpha = -kPi / 12.0;
  pb.zeta = 0.01;
  pb.grid = make_grid(2.0, 800);
  SurfaceSamples<double> s = to_samples(flat_surface(pb.grid));

  CxVec<double> psi_s = scattered_field(pb, s);
  double num = 0.0;
  int cnt = 0;
  for (int i = 0; i < pb.grid.n_panels; ++i) {
    double x = pb.grid.midpoint(i);
    if (std::abs(x) > 0.5 * pb.grid.half_length) continue;
    double phase = pb.k * (std::cos(pb.alpha) * x + std::sin(pb.alpha) * pb.zeta);
    std::complex<double> tot = std::exp(std::complex<double>(0, phase)) + to_c(psi_s[i]);
    num += std::norm(tot);
    ++cnt;
  }
  CHECK(std::sqrt(num / cnt) < 0.05);  // |psi_i| = 1
}

TEST_CASE("linearity of the scattering pipeline in the incident field") {
  SineSurface sine{0.1, 2.0 * kPi / 4.0};
  ScatterProblem pb;
  pb.pol = Polarization::TE;
  pb.k = 2.0 * kPi;
  pb.zeta = 0.6;
  pb.grid = make_grid(4.0, 80);
  SurfaceSamples<double> s = sine.sample(pb.grid);

  CxMat<double> A, B;
  assemble_dirichlet(pb, s, A, B);
  CxVec<double> rhs = incident_on_surface(pb, s);
  CxVec<double> rhs2(rhs.size());
  for (int i = 0; i < rhs.size(); ++i) rhs2[i] = rhs[i] * 2.0;
  CxVec<double> out1 = apply_matrix(B, linsolve(A, rhs));
  CxVec<double> out2 = apply_matrix(B, linsolve(A, rhs2));
  for (int i = 0; i < out1.size(); ++i) {
    CHECK(out2[i].re == doctest::Approx(2.0 * out1[i].re).epsilon(1e-12));
    CHECK(out2[i].im == doctest::Approx(2.0 * out1[i].im).epsilon(1e-12));
  }
}

TEST_CASE("TE path ignores second derivatives bit-for-bit") {
  SineSurface sine{0.12, 2.0 * kPi / 3.0};
  ScatterProblem pb;
  pb.pol = Polarization::TE;
  pb.k = 2.0 * kPi;
  pb.zeta = 0.5;
  pb.grid = make_grid(4.0, 60);
  SurfaceSamples<double> with = sine.sample(pb.grid);
  SurfaceSamples<double> without = with;
  without.d2h.clear();
  SurfaceSamples<double> garbage = with;
  for (auto& v : garbage.d2h) v = 1e9;

  CxVec<double> a = scattered_field(pb, with);
  CxVec<double> b = scattered_field(pb, without);
  CxVec<double> c = scattered_field(pb, garbage);
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a[i].re == b[i].re);
    CHECK(a[i].im == b[i].im);
    CHECK(a[i].re == c[i].re);
    CHECK(a[i].im == c[i].im);
  }
}

TEST_CASE("mesh convergence on a smooth surface") {
  GaussianSurfaceModel model(8.0, 2.0 / 3.0, 31);
  Grid ref_grid = make_grid(8.0, 240);
  double c = peak_trough_scale(model, ref_grid, 1.0, 0.4);

  for (auto pol : {Polarization::TE, Polarization::TM}) {
    std::vector<double> diffs;
    int prev_n = 0;
    Eigen::VectorXcd prev;
    for (int n : {60, 120, 240}) {
      ScatterProblem pb;
      pb.pol = pol;
      pb.k = 2.0 * kPi;
      pb.alpha = -kPi / 4.0;
      pb.zeta = 0.5;
      pb.grid = make_grid(8.0, n);
      SurfaceRealization s = realize(model, pb.grid, 1.0, c);
      CxVec<double> psi = scattered_field(pb, to_samples(s));
      Eigen::VectorXcd v(n);
      for (int i = 0; i < n; ++i) v[i] = to_c(psi[i]);
      if (prev_n > 0) {
        // Compare on the coarse midpoints by injecting the coarse field into
        // the fine grid positions (factor-2 refinement interleaves, so use
        // linear interpolation of the fine solution).
        double err = 0.0, den = 0.0;
        for (int i = 0; i < prev_n; ++i) {
          double x = (i + 0.5) * (16.0 / prev_n) - 8.0;
          double xf = (x + 8.0) / (16.0 / n) - 0.5;
          int j0 = std::max(0, std::min(n - 2, static_cast<int>(std::floor(xf))));
          double t = xf - j0;
          std::complex<double> fine = (1 - t) * v[j0] + t * v[j0 + 1];
          err += std::norm(prev[i] - fine);
          den += std::norm(fine);
        }
        diffs.push_back(std::sqrt(err / den));
      }
      prev = v;
      prev_n = n;
    }
    REQUIRE(diffs.size() == 2);
    CHECK(diffs[1] < diffs[0]);  // refinement shrinks the change
  }
}

TEST_CASE("zeta below the surface is rejected by the validation gate") {
  SineSurface sine{0.3, 1.0};
  ScatterProblem pb;
  pb.pol = Polarization::TE;
  pb.zeta = 0.1;  // below the crests
  pb.grid = make_grid(4.0, 40);
  SurfaceSamples<double> s = sine.sample(pb.grid);
  CHECK_THROWS_AS(check_zeta_above(pb, s), std::invalid_argument);
  pb.zeta = 0.5;
  CHECK_NOTHROW(check_zeta_above(pb, s));
}
