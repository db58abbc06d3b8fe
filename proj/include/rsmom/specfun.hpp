// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include "rsmom/complex.hpp"
#include "rsmom/tape.hpp"

namespace rsmom {

/// J0/Y0 and J1/Y1 by piecewise rational approximations (series-matched
/// fits below x = 8, asymptotic modulus/phase fits above). Absolute error
/// is a few 1e-8 over (0, 1e3], comfortably inside the quadrature budget.
struct BesselPair {
  double j;
  double y;
};

/// J0(x), Y0(x). Requires x > 0 (Y0 diverges at the origin).
BesselPair bessel_j0y0(double x);

/// J1(x), Y1(x). Requires x > 0.
BesselPair bessel_j1y1(double x);

/// J0 alone, defined for all x >= 0.
double bessel_j0(double x);

/// H0^(1)(x) = J0 + i Y0, the outgoing cylindrical wave kernel.
Cxd hankel0(double x);

/// H1^(1)(x) = J1 + i Y1.
Cxd hankel1(double x);

/// Hankel evaluations as single tape primitives: values are computed in
/// plain double arithmetic and the registered partials use
/// d/dx H0 = -H1 and d/dx H1 = H0 - H1/x.
Complex<ad::Var> hankel0(const ad::Var& x);
Complex<ad::Var> hankel1(const ad::Var& x);

/// Free-space 2D Helmholtz Green's function (i/4) H0^(1)(k |p - q|).
/// Throws std::domain_error at coincident points; the assembly handles the
/// self term separately.
Cxd green(double k, const Eigen::Vector2d& p, const Eigen::Vector2d& q);

/// Normal derivative of the Green's function at the source point,
/// n' . grad_q G(p; q), with the unit upward normal n' = (-h', 1)/sqrt(1+h'^2)
/// built from the surface slope at q. Equals the directional derivative of
/// green(k, p, q + t n') in t, so a point p at height d straight above q on a
/// flat surface gives +(ik/4) H1^(1)(kd).
Cxd green_normal_derivative(double k, const Eigen::Vector2d& p, const Eigen::Vector2d& q_surface,
                            double slope);

}  // namespace rsmom
