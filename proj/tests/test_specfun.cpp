// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rsmom/specfun.hpp"

using namespace rsmom;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("J0/Y0 near the origin") {
  auto b = bessel_j0y0(1e-8);
  CHECK(b.j == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(b.y < -10.0);  // logarithmic divergence
  CHECK_THROWS_AS(bessel_j0y0(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j0y0(-1.0), std::domain_error);
  CHECK(bessel_j0(0.0) == doctest::Approx(1.0));
}

TEST_CASE("J1/Y1 near the origin") {
  auto b = bessel_j1y1(1e-8);
  CHECK(std::abs(b.j) < 1e-7);
  CHECK_THROWS_AS(bessel_j1y1(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j1y1(-2.0), std::domain_error);
}

TEST_CASE("cylinder functions match the ascending series") {
  // The series oracle is trustworthy for x <= 12, which covers both sides of
  // the x = 8 approximation switch.
  for (double x : {0.05, 0.1, 0.5, 1.0, 2.0, 4.0, 7.0, 7.9, 8.1, 9.5, 11.0}) {
    auto b0 = bessel_j0y0(x);
    auto b1 = bessel_j1y1(x);
    CHECK(std::abs(b0.j - static_cast<double>(oracle::series_j0(x))) < 1e-6);
    CHECK(std::abs(b0.y - static_cast<double>(oracle::series_y0(x))) < 1e-6);
    CHECK(std::abs(b1.j - static_cast<double>(oracle::series_j1(x))) < 1e-6);
    CHECK(std::abs(b1.y - static_cast<double>(oracle::series_y1(x))) < 1e-6);
  }
}

TEST_CASE("Wronskian identity J1 Y0 - J0 Y1 = 2/(pi x) over [0.05, 500]") {
  for (double x = 0.05; x <= 500.0; x *= 1.07) {
    auto b0 = bessel_j0y0(x);
    auto b1 = bessel_j1y1(x);
    double w = b1.j * b0.y - b0.j * b1.y;
    CHECK(std::abs(w - 2.0 / (kPi * x)) < 1e-6);
  }
}

TEST_CASE("derivative identities d/dx H0 = -H1, d/dx H1 = H0 - H1/x") {
  for (double x : {0.3, 1.7, 6.0, 9.0, 40.0}) {
    double h = 1e-6 * std::max(1.0, x);
    auto d_j0 = (bessel_j0y0(x + h).j - bessel_j0y0(x - h).j) / (2 * h);
    auto d_y0 = (bessel_j0y0(x + h).y - bessel_j0y0(x - h).y) / (2 * h);
    auto b1 = bessel_j1y1(x);
    CHECK(d_j0 == doctest::Approx(-b1.j).epsilon(1e-5));
    CHECK(d_y0 == doctest::Approx(-b1.y).epsilon(1e-5));

    auto d_j1 = (bessel_j1y1(x + h).j - bessel_j1y1(x - h).j) / (2 * h);
    auto b0 = bessel_j0y0(x);
    CHECK(d_j1 == doctest::Approx(b0.j - b1.j / x).epsilon(1e-5));
  }
}

TEST_CASE("green: symmetry, series value, asymptotic modulus") {
  double k = 2.0 * kPi;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    Eigen::Vector2d p{u(rng), u(rng)}, q{u(rng), u(rng)};
    if ((p - q).norm() < 1e-6) continue;
    Cxd a = green(k, p, q), b = green(k, q, p);
    CHECK(a.re == doctest::Approx(b.re));
    CHECK(a.im == doctest::Approx(b.im));
  }

  // k|p-q| = 1: (i/4) H0(1) against the series oracle.
  Eigen::Vector2d p{0.0, 0.0}, q{1.0 / k, 0.0};
  Cxd g = green(k, p, q);
  double j0 = static_cast<double>(oracle::series_j0(1.0L));
  double y0 = static_cast<double>(oracle::series_y0(1.0L));
  CHECK(std::abs(g.re - (-0.25 * y0)) < 1e-6);
  CHECK(std::abs(g.im - 0.25 * j0) < 1e-6);

  // Large argument: |G| -> (1/4) sqrt(2/(pi x)).
  Eigen::Vector2d q2{100.0 / k, 0.0};
  double mag = abs(green(k, p, q2));
  CHECK(mag == doctest::Approx(0.25 * std::sqrt(2.0 / (kPi * 100.0))).epsilon(0.01));

  CHECK_THROWS_AS(green(k, p, p), std::domain_error);
}

TEST_CASE("green decays like d^-1/2 (ratio at d vs 4d)") {
  double k = 2.0 * kPi;
  Eigen::Vector2d p{0.0, 0.0};
  for (double d : {5.0, 12.0, 40.0}) {
    double g1 = abs(green(k, p, {d, 0.0}));
    double g4 = abs(green(k, p, {4.0 * d, 0.0}));
    CHECK(g4 / g1 == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("green_normal_derivative: geometry cases and FD oracle") {
  double k = 2.0 * kPi;

  // Both points on a flat surface: n' is orthogonal to q - p.
  {
    Cxd v = green_normal_derivative(k, {0.3, 0.0}, {1.1, 0.0}, 0.0);
    CHECK(v.re == doctest::Approx(0.0).scale(1));
    CHECK(v.im == doctest::Approx(0.0).scale(1));
  }

  // p at height d straight above q on a flat surface: the directional
  // derivative of G along the upward normal, +(ik/4) H1(kd).
  {
    double d = 0.37;
    Cxd v = green_normal_derivative(k, {0.0, d}, {0.0, 0.0}, 0.0);
    Cxd expected = times_i(hankel1(k * d)) * (0.25 * k);
    CHECK(v.re == doctest::Approx(expected.re).epsilon(1e-12));
    CHECK(v.im == doctest::Approx(expected.im).epsilon(1e-12));
  }

  // Random configurations against the central-difference directional
  // derivative of green along n'.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 15; ++i) {
    Eigen::Vector2d p{u(rng), u(rng) + 3.0}, q{u(rng), u(rng)};
    double slope = u(rng);
    Eigen::Vector2d n{-slope, 1.0};
    n.normalize();
    Cxd v = green_normal_derivative(k, p, q, slope);
    double h = 1e-6;
    auto re = [&](double t) { return green(k, p, q + t * n).re; };
    auto im = [&](double t) { return green(k, p, q + t * n).im; };
    double fd_re = oracle::central_diff(re, h);
    double fd_im = oracle::central_diff(im, h);
    CHECK(v.re == doctest::Approx(fd_re).epsilon(1e-5));
    CHECK(v.im == doctest::Approx(fd_im).epsilon(1e-5));
  }
}

TEST_CASE("tape hankel primitives carry the analytic partials") {
  ad::Tape tape;
  for (double x0 : {0.4, 3.0, 9.0, 30.0}) {
    tape.clear();
    ad::Var x = tape.input(x0);
    auto h0 = hankel0(x);
    auto h1 = hankel1(x);
    ad::Var probe = h0.re + h0.im + h1.re + h1.im;
    tape.backward(probe);
    double g = tape.grad(x);
    double eps = 1e-6 * std::max(1.0, x0);
    auto sum_at = [&](double xv) {
      auto a = hankel0(xv);
      auto b = hankel1(xv);
      return a.re + a.im + b.re + b.im;
    };
    double fd = (sum_at(x0 + eps) - sum_at(x0 - eps)) / (2 * eps);
    CHECK(g == doctest::Approx(fd).epsilon(1e-5));
  }
}
