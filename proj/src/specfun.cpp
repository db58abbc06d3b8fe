// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace rsmom {

namespace {

// Rational fits below the switch point x = 8 plus asymptotic modulus/phase
// expansions above it; the classic Hart-style coefficient sets.

double j0_small(double x) {
  double y = x * x;
  double num = 57568490574.0 +
               y * (-13362590354.0 +
                    y * (651619640.7 + y * (-11214424.18 + y * (77392.33017 + y * (-184.9052456)))));
  double den =
      57568490411.0 +
      y * (1029532985.0 + y * (9494680.718 + y * (59272.64853 + y * (267.8532712 + y))));
  return num / den;
}

double j1_small(double x) {
  double y = x * x;
  double num = x * (72362614232.0 +
                    y * (-7895059235.0 +
                         y * (242396853.1 + y * (-2972611.439 + y * (15704.48260 + y * (-30.16036606))))));
  double den =
      144725228442.0 +
      y * (2300535178.0 + y * (18583304.74 + y * (99447.43394 + y * (376.9991397 + y))));
  return num / den;
}

struct Asym {
  double p, q, amp, xx;
};

Asym asym0(double x) {
  double z = 8.0 / x;
  double y = z * z;
  double p = 1.0 + y * (-0.1098628627e-2 + y * (0.2734510407e-4 + y * (-0.2073370639e-5 + y * 0.2093887211e-6)));
  double q = -0.1562499995e-1 +
             y * (0.1430488765e-3 + y * (-0.6911147651e-5 + y * (0.7621095161e-6 + y * (-0.934935152e-7))));
  return {p, z * q, std::sqrt(0.636619772 / x), x - 0.785398164};
}

Asym asym1(double x) {
  double z = 8.0 / x;
  double y = z * z;
  double p = 1.0 + y * (0.183105e-2 + y * (-0.3516396496e-4 + y * (0.2457520174e-5 + y * (-0.240337019e-6))));
  double q = 0.04687499995 +
             y * (-0.2002690873e-3 + y * (0.8449199096e-5 + y * (-0.88228987e-6 + y * 0.105787412e-6)));
  return {p, z * q, std::sqrt(0.636619772 / x), x - 2.356194491};
}

}  // namespace

double bessel_j0(double x) {
  if (x < 0.0) throw std::domain_error("bessel_j0: x < 0");
  if (x < 8.0) return j0_small(x);
  Asym a = asym0(x);
  return a.amp * (std::cos(a.xx) * a.p - std::sin(a.xx) * a.q);
}

BesselPair bessel_j0y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j0y0: requires x > 0");
  if (x < 8.0) {
    double y = x * x;
    double num = -2957821389.0 +
                 y * (7062834065.0 +
                      y * (-512359803.6 + y * (10879881.29 + y * (-86327.92757 + y * 228.4622733))));
    double den =
        40076544269.0 +
        y * (745249964.8 + y * (7189466.438 + y * (47447.26470 + y * (226.1030244 + y))));
    double j0 = j0_small(x);
    return {j0, num / den + 0.636619772 * j0 * std::log(x)};
  }
  Asym a = asym0(x);
  double c = std::cos(a.xx), s = std::sin(a.xx);
  return {a.amp * (c * a.p - s * a.q), a.amp * (s * a.p + c * a.q)};
}

BesselPair bessel_j1y1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j1y1: requires x > 0");
  if (x < 8.0) {
    double y = x * x;
    double num = x * (-4.900604943e12 +
                      y * (1.275274390e12 +
                           y * (-5.153438139e10 + y * (7.349264551e8 + y * (-4.237922726e6 + y * 8.511937935e3)))));
    double den = 2.499580570e13 +
                 y * (4.244419664e11 +
                      y * (3.733650367e9 + y * (2.245904002e7 + y * (1.020426050e5 + y * (3.549632885e2 + y)))));
    double j1 = j1_small(x);
    return {j1, num / den + 0.636619772 * (j1 * std::log(x) - 1.0 / x)};
  }
  Asym a = asym1(x);
  double c = std::cos(a.xx), s = std::sin(a.xx);
  return {a.amp * (c * a.p - s * a.q), a.amp * (s * a.p + c * a.q)};
}

Cxd hankel0(double x) {
  BesselPair b = bessel_j0y0(x);
  return {b.j, b.y};
}

Cxd hankel1(double x) {
  BesselPair b = bessel_j1y1(x);
  return {b.j, b.y};
}

Complex<ad::Var> hankel0(const ad::Var& x) {
  BesselPair b0 = bessel_j0y0(x.v);
  if (!x.tracked()) return {ad::Var(b0.j), ad::Var(b0.y)};
  BesselPair b1 = bessel_j1y1(x.v);
  return {x.tape->record1(b0.j, x, -b1.j), x.tape->record1(b0.y, x, -b1.y)};
}

Complex<ad::Var> hankel1(const ad::Var& x) {
  BesselPair b1 = bessel_j1y1(x.v);
  if (!x.tracked()) return {ad::Var(b1.j), ad::Var(b1.y)};
  BesselPair b0 = bessel_j0y0(x.v);
  return {x.tape->record1(b1.j, x, b0.j - b1.j / x.v),
          x.tape->record1(b1.y, x, b0.y - b1.y / x.v)};
}

Cxd green(double k, const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  double d = (p - q).norm();
  if (d <= 0.0) throw std::domain_error("green: coincident points (self term must be handled by the caller)");
  Cxd h = hankel0(k * d);
  return times_i(h) * 0.25;
}

Cxd green_normal_derivative(double k, const Eigen::Vector2d& p, const Eigen::Vector2d& q_surface,
                            double slope) {
  Eigen::Vector2d diff = q_surface - p;
  double d = diff.norm();
  if (d <= 0.0) throw std::domain_error("green_normal_derivative: coincident points");
  double jac = std::sqrt(1.0 + slope * slope);
  double ndot = (-slope * diff.x() + diff.y()) / jac;
  // n'.grad_q (i/4) H0(k|p-q|) = -(ik/4) H1(kd) (n'.(q-p))/d
  Cxd h1 = hankel1(k * d);
  double scale = -0.25 * k * ndot / d;
  return times_i(h1) * scale;
}

}  // namespace rsmom
