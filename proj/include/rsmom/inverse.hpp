// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

#include "rsmom/mlp.hpp"
#include "rsmom/mom.hpp"

namespace rsmom {

/// Which field quantity was measured.
enum class DataCase {
  FullField,  // complex scattered field (case A)
  Phaseless,  // amplitude of the total field (case B)
};

/// Field measurements along the horizontal line z = zeta. `values` holds the
/// complex scattered field for FullField; `amplitude` holds |psi_tot| for
/// Phaseless. Incidence parameters ride along for validation.
struct ObservationSet {
  Eigen::VectorXd x;  // strictly increasing abscissae in [-L, L]
  double zeta = 0.5;
  DataCase kind = DataCase::FullField;
  Eigen::VectorXcd values;
  Eigen::VectorXd amplitude;
  double k = 2.0 * 3.14159265358979323846;
  double alpha = -3.14159265358979323846 / 4.0;
  Polarization pol = Polarization::TE;
};

struct TrainConfig {
  Polarization pol = Polarization::TE;
  DataCase data_case = DataCase::FullField;
  int n_obs = 240;
  int n_inv = 480;
  int n_b = 10;
  double learning_rate = 1e-3;
  int iterations = 1500;
  std::uint64_t seed = 1;
  int hidden_layers = 4;
  int neurons = 256;
  double h_bound = 1.0;      // output normalization bound
  double field_weight = 1.0; // weight of the field misfit term
  double bc_weight = 1.0;    // weight of the boundary term
  double boundary_value = 0.0;
  double half_length = 8.0;
  double k = 2.0 * 3.14159265358979323846;
  double alpha = -3.14159265358979323846 / 4.0;
  double zeta = 0.5;

  void validate() const;
};

/// Random collocation grid for one training iteration: panel count uniform
/// on [n_obs, n_inv], midpoints of the corresponding uniform grid.
struct Collocation {
  int n = 0;
  double dx = 0.0;
  Eigen::VectorXd midpoints;
};
Collocation sample_collocation(std::mt19937_64& rng, int n_obs, int n_inv, double half_length);

/// The n_b near-edge constraint abscissae for a given iteration spacing:
/// half anchored at -L, half at +L, stepping inward by dx.
Eigen::VectorXd boundary_points(double half_length, double dx, int n_b);

/// Piecewise-linear (hat) interpolation with constant extrapolation outside
/// the observation hull.
Eigen::VectorXd interp_linear(const Eigen::VectorXd& xs, const Eigen::VectorXd& vs,
                              const Eigen::VectorXd& targets);
Eigen::VectorXcd interp_linear(const Eigen::VectorXd& xs, const Eigen::VectorXcd& vs,
                               const Eigen::VectorXd& targets);

/// Multiplicative measurement noise: each point scaled by (1 + eps * theta),
/// theta uniform on [-1, 1], one draw per point.
Eigen::VectorXcd add_noise(const Eigen::VectorXcd& values, double eps, std::mt19937_64& rng);
Eigen::VectorXd add_noise(const Eigen::VectorXd& values, double eps, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Losses (generic so they can be recorded on the tape)
// ---------------------------------------------------------------------------

/// Case A: mean squared complex misfit of the scattered field plus the mean
/// squared boundary residual.
template <typename T>
T loss_full_field(const CxVec<T>& pred, const Eigen::VectorXcd& data, const std::vector<T>& h_bc,
                  const Eigen::VectorXd& bc_target, double field_weight = 1.0, double bc_weight = 1.0) {
  T acc(0.0);
  for (Eigen::Index i = 0; i < pred.size(); ++i) {
    Complex<T> r = pred[i] - Complex<T>(T(data[i].real()), T(data[i].imag()));
    acc += abs2(r);
  }
  T loss = acc * (field_weight / static_cast<double>(pred.size()));
  if (!h_bc.empty()) {
    T accb(0.0);
    for (std::size_t j = 0; j < h_bc.size(); ++j) {
      T e = h_bc[j] - bc_target[static_cast<Eigen::Index>(j)];
      accb += e * e;
    }
    loss = loss + accb * (bc_weight / static_cast<double>(h_bc.size()));
  }
  return loss;
}

/// Case B: mean squared misfit of |psi_s + psi_i| against the measured total
/// amplitude, plus the boundary term.
template <typename T>
T loss_phaseless(const CxVec<T>& pred_scattered, const Eigen::VectorXcd& incident,
                 const Eigen::VectorXd& amp_data, const std::vector<T>& h_bc,
                 const Eigen::VectorXd& bc_target, double field_weight = 1.0, double bc_weight = 1.0) {
  T acc(0.0);
  for (Eigen::Index i = 0; i < pred_scattered.size(); ++i) {
    Complex<T> tot = pred_scattered[i] + Complex<T>(T(incident[i].real()), T(incident[i].imag()));
    T amp = abs(tot);
    T e = amp - amp_data[i];
    acc += e * e;
  }
  T loss = acc * (field_weight / static_cast<double>(pred_scattered.size()));
  if (!h_bc.empty()) {
    T accb(0.0);
    for (std::size_t j = 0; j < h_bc.size(); ++j) {
      T e = h_bc[j] - bc_target[static_cast<Eigen::Index>(j)];
      accb += e * e;
    }
    loss = loss + accb * (bc_weight / static_cast<double>(h_bc.size()));
  }
  return loss;
}

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

struct AdamState {
  Eigen::VectorXd m, v;
  long t = 0;
};

/// One Adam update (beta1 = 0.9, beta2 = 0.999, eps = 1e-8, bias-corrected).
/// Throws on non-finite gradients.
void adam_step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, AdamState& state, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

struct TrainResult {
  MlpParams params;
  Eigen::VectorXd report_x;  // reporting grid (the observation abscissae)
  Eigen::VectorXd report_h;  // reconstructed surface there
  std::vector<double> loss_history;
};

/// Loss and parameter gradient of one training iteration, exactly as the
/// optimizer consumes them: batched surrogate jets at the collocation and
/// boundary points, boundary-operator assembly and solve recorded on the
/// tape, layer-level reverse through the surrogate. Exposed so gradient
/// checks exercise the genuine training path.
double train_step_gradient(const TrainConfig& cfg, const ObservationSet& obs, const MlpParams& params,
                           const Collocation& colloc, Eigen::VectorXd& grad);

/// Full reconstruction loop: per iteration draw a collocation grid,
/// interpolate the data onto it, evaluate the surrogate and the scattering
/// operators under tracking, backpropagate and update with Adam.
TrainResult train(const TrainConfig& cfg, const ObservationSet& obs);

/// 100 * ||recon - truth||_2 / ||truth||_2.
double l2_error_percent(const Eigen::VectorXd& recon, const Eigen::VectorXd& truth);

}  // namespace rsmom
