// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "rsmom/complex.hpp"
#include "rsmom/grid.hpp"
#include "rsmom/specfun.hpp"
#include "rsmom/tape.hpp"

namespace rsmom {

enum class Polarization { TE, TM };

/// One scattering configuration: polarization, plane-wave incidence
/// (wavenumber k, grazing angle alpha), observation height zeta, panel grid.
struct ScatterProblem {
  Polarization pol = Polarization::TE;
  double k = 2.0 * 3.14159265358979323846;
  double alpha = -3.14159265358979323846 / 4.0;
  double zeta = 0.5;
  Grid grid;
};

/// Midpoint surface samples. d2h is only consumed on the TM (Neumann) path
/// and may be left empty for TE.
template <typename T>
struct SurfaceSamples {
  std::vector<T> h, dh, d2h;
};

template <typename T>
using CxMat = Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using CxVec = Eigen::Matrix<Complex<T>, Eigen::Dynamic, 1>;

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what, double cond) : std::runtime_error(what), condition_estimate(cond) {}
  double condition_estimate;
};

/// LU solve with partial pivoting. Throws SingularMatrixError (with a crude
/// |U| diagonal-ratio condition estimate) when a pivot collapses.
Eigen::VectorXcd solve_linear(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b);

/// Unit-amplitude plane wave exp(ik(cos(a) x + sin(a) z)) at the points.
Eigen::VectorXcd incident_field(const ScatterProblem& pb, const std::vector<Eigen::Vector2d>& pts);

// ---------------------------------------------------------------------------
// Fused scalar primitives with dual backends. Each records a single tape node
// in the tracked case.
// ---------------------------------------------------------------------------

/// k * sqrt(dz^2 + c2) with constant horizontal offset squared c2.
inline double dist_arg(double dz, double c2, double k) { return k * std::sqrt(dz * dz + c2); }
inline ad::Var dist_arg(const ad::Var& dz, double c2, double k) {
  double d = std::sqrt(dz.v * dz.v + c2);
  if (!dz.tracked()) return ad::Var(k * d);
  return dz.tape->record1(k * d, dz, k * dz.v / d);
}

/// q / sqrt(dz^2 + c2).
inline double div_by_dist(double q, double dz, double c2) { return q / std::sqrt(dz * dz + c2); }
inline ad::Var div_by_dist(const ad::Var& q, const ad::Var& dz, double c2) {
  double d2 = dz.v * dz.v + c2;
  double d = std::sqrt(d2);
  double v = q.v / d;
  ad::Tape* t = q.tape ? q.tape : dz.tape;
  if (!t) return ad::Var(v);
  double pq = 1.0 / d;
  double pz = -v * dz.v / d2;
  if (q.tracked() && dz.tracked()) return t->record2(v, q, pq, dz, pz);
  if (q.tracked()) return t->record1(v, q, pq);
  return t->record1(v, dz, pz);
}

/// sqrt(1 + t^2), the panel arc-length factor.
inline double sqrt1p_sq(double t) { return std::sqrt(1.0 + t * t); }
inline ad::Var sqrt1p_sq(const ad::Var& t) {
  double v = std::sqrt(1.0 + t.v * t.v);
  if (!t.tracked()) return ad::Var(v);
  return t.tape->record1(v, t, t.v / v);
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

namespace detail {

/// Surface data reconstructed at the panel nodes by averaging the two
/// neighbouring midpoints; ghost midpoints beyond the domain carry the taper
/// value 0.
template <typename T>
struct NodeData {
  std::vector<T> h, dh, jac;
};

template <typename T>
NodeData<T> interpolate_nodes(const SurfaceSamples<T>& s, bool with_jacobian) {
  int n = static_cast<int>(s.h.size());
  NodeData<T> e;
  e.h.resize(n + 1);
  e.dh.resize(n + 1);
  e.h[0] = 0.5 * s.h[0];
  e.dh[0] = 0.5 * s.dh[0];
  e.h[n] = 0.5 * s.h[n - 1];
  e.dh[n] = 0.5 * s.dh[n - 1];
  for (int i = 1; i < n; ++i) {
    e.h[i] = 0.5 * (s.h[i - 1] + s.h[i]);
    e.dh[i] = 0.5 * (s.dh[i - 1] + s.dh[i]);
  }
  if (with_jacobian) {
    e.jac.resize(n + 1);
    for (int i = 0; i <= n; ++i) e.jac[i] = sqrt1p_sq(e.dh[i]);
  }
  return e;
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286;

}  // namespace detail

/// Direct-problem validation: measured data only makes sense with the
/// observation line strictly above the surface. The assembly itself stays
/// callable for arbitrary surrogate states (its kernels cannot become
/// singular: observation abscissae are midpoints, sources are panel nodes).
template <typename T>
void check_zeta_above(const ScatterProblem& pb, const SurfaceSamples<T>& s) {
  using ad::value;
  for (const T& h : s.h)
    if (!(pb.zeta > value(h))) throw std::invalid_argument("observation line z = zeta must lie above the surface");
}

/// Dirichlet (TE) operators: A maps panel currents to the surface incident
/// field, B to the field on the observation line z = zeta. Entries are
/// trapezium-rule integrals of (i/4) H0(k d) sqrt(1+h'^2) over each panel;
/// the log-singular diagonal uses the closed-form small-argument integral.
template <typename T>
void assemble_dirichlet(const ScatterProblem& pb, const SurfaceSamples<T>& s, CxMat<T>& A, CxMat<T>& B) {
  const Grid& g = pb.grid;
  const int n = g.n_panels;
  if (static_cast<int>(s.h.size()) != n || static_cast<int>(s.dh.size()) != n)
    throw std::invalid_argument("assemble_dirichlet: surface samples do not match the grid");
  const double dx = g.spacing();
  const double k = pb.k;

  detail::NodeData<T> e = detail::interpolate_nodes(s, /*with_jacobian=*/true);
  A.resize(n, n);
  B.resize(n, n);

  std::vector<Complex<T>> f(n + 1);
  for (int row = 0; row < n; ++row) {
    const double xr = g.midpoint(row);

    // Surface target (X_row, h_row): integrand at every panel node.
    for (int ie = 0; ie <= n; ++ie) {
      double dxc = xr - g.node(ie);
      T dz = s.h[row] - e.h[ie];
      T arg = dist_arg(dz, dxc * dxc, k);
      Complex<T> h0 = hankel0(arg);
      f[ie] = times_i(h0 * e.jac[ie]) * 0.25;
    }
    for (int l = 0; l < n; ++l) {
      if (l == row) continue;
      A(row, l) = (f[l] + f[l + 1]) * (0.5 * dx);
    }
    // Self term: closed-form panel integral of the small-argument kernel
    // (i/4)[1 + (2i/pi)(ln(x/2) + gamma)], x = k|s - s'|, over arc length
    // ds = dx sqrt(1 + h'(X_row)^2).
    {
      using std::log;
      using ad::log;
      T ds = dx * sqrt1p_sq(s.dh[row]);
      T lg = log(ds * (0.25 * k));
      T re = ds * (lg + (detail::kEulerGamma - 1.0)) * (-0.5 / detail::kPi);
      T im = ds * 0.25;
      A(row, row) = Complex<T>(re, im);
    }

    // Observation target (X_row, zeta).
    for (int ie = 0; ie <= n; ++ie) {
      double dxc = xr - g.node(ie);
      T dz = pb.zeta - e.h[ie];
      T arg = dist_arg(dz, dxc * dxc, k);
      Complex<T> h0 = hankel0(arg);
      f[ie] = times_i(h0 * e.jac[ie]) * 0.25;
    }
    for (int l = 0; l < n; ++l) B(row, l) = (f[l] + f[l + 1]) * (0.5 * dx);
  }
}

/// Neumann (TM) operators. The double-layer kernel in arc-length form,
///   K jac = -(ik/4) H1(k d) [ (h_e - z_p) - h'_e (x_e - x_p) ] / d,
/// is integrated by the trapezium rule; A carries 1/2 I minus the surface
/// integral (interior jump relation), with the continuous self-panel limit
/// kappa/(4 pi) (kappa the signed curvature) integrated as a constant. B is
/// the plain integral toward the observation line.
template <typename T>
void assemble_neumann(const ScatterProblem& pb, const SurfaceSamples<T>& s, CxMat<T>& A, CxMat<T>& B) {
  const Grid& g = pb.grid;
  const int n = g.n_panels;
  if (static_cast<int>(s.h.size()) != n || static_cast<int>(s.dh.size()) != n ||
      static_cast<int>(s.d2h.size()) != n)
    throw std::invalid_argument("assemble_neumann: surface samples (h, h', h'') do not match the grid");
  const double dx = g.spacing();
  const double k = pb.k;

  detail::NodeData<T> e = detail::interpolate_nodes(s, /*with_jacobian=*/false);
  A.resize(n, n);
  B.resize(n, n);

  std::vector<Complex<T>> f(n + 1);
  for (int row = 0; row < n; ++row) {
    const double xr = g.midpoint(row);

    for (int ie = 0; ie <= n; ++ie) {
      double dxc = g.node(ie) - xr;  // x_e - x_p
      T dz = e.h[ie] - s.h[row];
      T arg = dist_arg(dz, dxc * dxc, k);
      Complex<T> h1 = hankel1(arg);
      T q = dz - e.dh[ie] * dxc;
      T r = div_by_dist(q, dz, dxc * dxc);
      f[ie] = times_i(h1 * r) * (-0.25 * k);
    }
    for (int l = 0; l < n; ++l) {
      if (l == row) continue;
      A(row, l) = -((f[l] + f[l + 1]) * (0.5 * dx));
    }
    {
      // 1/2 - integral of the kernel limit kappa/(4 pi) over the panel arc:
      // dx sqrt(1+h'^2) * [h'' / (1+h'^2)^(3/2)] / (4 pi) = dx h'' / (4 pi (1+h'^2)).
      T den = 1.0 + s.dh[row] * s.dh[row];
      T re = 0.5 - (dx / (4.0 * detail::kPi)) * (s.d2h[row] / den);
      A(row, row) = Complex<T>(re, T(0.0));
    }

    for (int ie = 0; ie <= n; ++ie) {
      double dxc = g.node(ie) - xr;
      T dz = e.h[ie] - pb.zeta;
      T arg = dist_arg(dz, dxc * dxc, k);
      Complex<T> h1 = hankel1(arg);
      T q = dz - e.dh[ie] * dxc;
      T r = div_by_dist(q, dz, dxc * dxc);
      f[ie] = times_i(h1 * r) * (-0.25 * k);
    }
    for (int l = 0; l < n; ++l) B(row, l) = (f[l] + f[l + 1]) * (0.5 * dx);
  }
}

// ---------------------------------------------------------------------------
// Linear algebra over both scalar backends
// ---------------------------------------------------------------------------

CxVec<double> linsolve(const CxMat<double>& A, const CxVec<double>& b);
CxVec<double> apply_matrix(const CxMat<double>& B, const CxVec<double>& y);

/// Tracked solve: forward factorizes the value matrix; backward reuses the
/// factorization for one adjoint solve (bbar = A^-H ybar, Abar = -bbar y^H in
/// the real-pair sense).
CxVec<ad::Var> linsolve(const CxMat<ad::Var>& A, const CxVec<ad::Var>& b);
CxVec<ad::Var> apply_matrix(const CxMat<ad::Var>& B, const CxVec<ad::Var>& y);

// ---------------------------------------------------------------------------
// Forward map
// ---------------------------------------------------------------------------

/// Incident plane wave evaluated on the surface midpoints (tracked through h).
template <typename T>
CxVec<T> incident_on_surface(const ScatterProblem& pb, const SurfaceSamples<T>& s) {
  using std::cos;
  using std::sin;
  using ad::cos;
  using ad::sin;
  const Grid& g = pb.grid;
  int n = g.n_panels;
  CxVec<T> out(n);
  double kx = pb.k * std::cos(pb.alpha);
  double kz = pb.k * std::sin(pb.alpha);
  for (int i = 0; i < n; ++i) {
    T phase = kz * s.h[i] + kx * g.midpoint(i);
    out[i] = Complex<T>(cos(phase), sin(phase));
  }
  return out;
}

/// Scattered field at the observation points (X_l, zeta): assemble the
/// boundary operators for the configured polarization, solve for the surface
/// unknowns, and propagate to the observation line. Runs identically on
/// plain doubles and on tape-tracked scalars.
template <typename T>
CxVec<T> scattered_field(const ScatterProblem& pb, const SurfaceSamples<T>& s) {
  CxMat<T> A, B;
  if (pb.pol == Polarization::TE)
    assemble_dirichlet(pb, s, A, B);
  else
    assemble_neumann(pb, s, A, B);
  CxVec<T> rhs = incident_on_surface(pb, s);
  CxVec<T> y = linsolve(A, rhs);
  CxVec<T> out = apply_matrix(B, y);
  if (pb.pol == Polarization::TE) {
    // psi_s(r) = -Int G dpsi/dn': the Dirichlet scattered-field
    // representation carries the minus sign.
    for (int i = 0; i < out.size(); ++i) out[i] = -out[i];
  }
  return out;
}

}  // namespace rsmom
