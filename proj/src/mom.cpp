// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/mom.hpp"

#include <Eigen/LU>
#include <memory>

namespace rsmom {

namespace {

Eigen::MatrixXcd values_of(const CxMat<ad::Var>& A) {
  Eigen::MatrixXcd M(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) M(i, j) = {A(i, j).re.v, A(i, j).im.v};
  return M;
}

Eigen::VectorXcd values_of(const CxVec<ad::Var>& b) {
  Eigen::VectorXcd v(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) v[i] = {b[i].re.v, b[i].im.v};
  return v;
}

void check_pivots(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
  Eigen::VectorXd du = lu.matrixLU().diagonal().cwiseAbs();
  double dmax = du.maxCoeff();
  double dmin = du.minCoeff();
  if (!(dmin > dmax * 1e-14))
    throw SingularMatrixError("linear system is numerically singular", dmin > 0.0 ? dmax / dmin : 0.0);
}

// Parent id layout shared by the tracked solve and matvec: matrix entries
// column-major as (re, im) pairs, then the vector entries.
std::vector<std::int32_t> pack_parents(const CxMat<ad::Var>& M, const CxVec<ad::Var>& v) {
  std::vector<std::int32_t> p;
  p.reserve(static_cast<std::size_t>(2 * M.size() + 2 * v.size()));
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      p.push_back(M(i, j).re.id);
      p.push_back(M(i, j).im.id);
    }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    p.push_back(v[i].re.id);
    p.push_back(v[i].im.id);
  }
  return p;
}

ad::Tape* tape_of(const CxMat<ad::Var>& M, const CxVec<ad::Var>& v) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      if (M(i, j).re.tape) return M(i, j).re.tape;
      if (M(i, j).im.tape) return M(i, j).im.tape;
    }
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i].re.tape) return v[i].re.tape;
  return nullptr;
}

CxVec<ad::Var> wrap_outputs(const std::vector<ad::Var>& outs) {
  CxVec<ad::Var> y(static_cast<Eigen::Index>(outs.size() / 2));
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = {outs[static_cast<std::size_t>(2 * i)], outs[static_cast<std::size_t>(2 * i + 1)]};
  return y;
}

std::vector<double> pack_values(const Eigen::VectorXcd& v) {
  std::vector<double> out(static_cast<std::size_t>(2 * v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[static_cast<std::size_t>(2 * i)] = v[i].real();
    out[static_cast<std::size_t>(2 * i + 1)] = v[i].imag();
  }
  return out;
}

Eigen::VectorXcd gather_out_adjoints(ad::Tape& t, const ad::Tape::CustomOp& op, Eigen::Index n) {
  Eigen::VectorXcd a(n);
  for (Eigen::Index i = 0; i < n; ++i)
    a[i] = {t.adjoint(op.first_out + static_cast<std::int32_t>(2 * i)),
            t.adjoint(op.first_out + static_cast<std::int32_t>(2 * i + 1))};
  return a;
}

void scatter_complex(ad::Tape& t, const std::vector<std::int32_t>& parents, std::size_t slot,
                     const std::complex<double>& w) {
  t.add_adjoint(parents[2 * slot], w.real());
  t.add_adjoint(parents[2 * slot + 1], w.imag());
}

}  // namespace

Eigen::VectorXcd solve_linear(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) throw std::invalid_argument("solve_linear: shape mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  check_pivots(lu);
  return lu.solve(b);
}

Eigen::VectorXcd incident_field(const ScatterProblem& pb, const std::vector<Eigen::Vector2d>& pts) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(pts.size()));
  double kx = pb.k * std::cos(pb.alpha);
  double kz = pb.k * std::sin(pb.alpha);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double phase = kx * pts[i].x() + kz * pts[i].y();
    out[static_cast<Eigen::Index>(i)] = {std::cos(phase), std::sin(phase)};
  }
  return out;
}

CxVec<double> linsolve(const CxMat<double>& A, const CxVec<double>& b) {
  Eigen::MatrixXcd M(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) M(i, j) = {A(i, j).re, A(i, j).im};
  Eigen::VectorXcd rhs(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) rhs[i] = {b[i].re, b[i].im};
  Eigen::VectorXcd y = solve_linear(M, rhs);
  CxVec<double> out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = {y[i].real(), y[i].imag()};
  return out;
}

CxVec<double> apply_matrix(const CxMat<double>& B, const CxVec<double>& y) {
  CxVec<double> out(B.rows());
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    Cxd acc{0.0, 0.0};
    for (Eigen::Index j = 0; j < B.cols(); ++j) acc += B(i, j) * y[j];
    out[i] = acc;
  }
  return out;
}

CxVec<ad::Var> linsolve(const CxMat<ad::Var>& A, const CxVec<ad::Var>& b) {
  const Eigen::Index n = A.rows();
  if (A.rows() != A.cols() || n != b.size()) throw std::invalid_argument("linsolve: shape mismatch");
  Eigen::MatrixXcd Av = values_of(A);
  Eigen::VectorXcd bv = values_of(b);
  auto lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(Av);
  check_pivots(*lu);
  Eigen::VectorXcd yv = lu->solve(bv);

  ad::Tape* tape = tape_of(A, b);
  if (!tape) {
    CxVec<ad::Var> out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = {ad::Var(yv[i].real()), ad::Var(yv[i].imag())};
    return out;
  }

  auto outs = tape->custom(
      pack_parents(A, b), pack_values(yv),
      [lu, yv, n](ad::Tape& t, const ad::Tape::CustomOp& op) {
        Eigen::VectorXcd ybar = gather_out_adjoints(t, op, n);
        if (ybar.isZero(0.0)) return;
        // bbar = A^-H ybar (one adjoint solve on the stored factorization),
        // Abar = -bbar y^H.
        Eigen::VectorXcd bbar = lu->adjoint().solve(ybar);
        const std::size_t b_base = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        for (Eigen::Index i = 0; i < n; ++i) scatter_complex(t, op.parents, b_base + static_cast<std::size_t>(i), bbar[i]);
        for (Eigen::Index j = 0; j < n; ++j) {
          std::complex<double> yc = std::conj(yv[j]);
          for (Eigen::Index i = 0; i < n; ++i)
            scatter_complex(t, op.parents, static_cast<std::size_t>(j * n + i), -bbar[i] * yc);
        }
      });
  return wrap_outputs(outs);
}

CxVec<ad::Var> apply_matrix(const CxMat<ad::Var>& B, const CxVec<ad::Var>& y) {
  const Eigen::Index m = B.rows(), n = B.cols();
  if (n != y.size()) throw std::invalid_argument("apply_matrix: shape mismatch");
  Eigen::MatrixXcd Bv = values_of(B);
  Eigen::VectorXcd yv = values_of(y);
  Eigen::VectorXcd outv = Bv * yv;

  ad::Tape* tape = tape_of(B, y);
  if (!tape) {
    CxVec<ad::Var> out(m);
    for (Eigen::Index i = 0; i < m; ++i) out[i] = {ad::Var(outv[i].real()), ad::Var(outv[i].imag())};
    return out;
  }

  auto outs = tape->custom(
      pack_parents(B, y), pack_values(outv),
      [Bv, yv, m, n](ad::Tape& t, const ad::Tape::CustomOp& op) {
        Eigen::VectorXcd obar = gather_out_adjoints(t, op, m);
        if (obar.isZero(0.0)) return;
        // ybar += B^H obar; Bbar(i,j) += obar_i conj(y_j).
        Eigen::VectorXcd ybar = Bv.adjoint() * obar;
        const std::size_t y_base = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
        for (Eigen::Index j = 0; j < n; ++j) scatter_complex(t, op.parents, y_base + static_cast<std::size_t>(j), ybar[j]);
        for (Eigen::Index j = 0; j < n; ++j) {
          std::complex<double> yc = std::conj(yv[j]);
          for (Eigen::Index i = 0; i < m; ++i)
            scatter_complex(t, op.parents, static_cast<std::size_t>(j * m + i), obar[i] * yc);
        }
      });
  return wrap_outputs(outs);
}

}  // namespace rsmom
