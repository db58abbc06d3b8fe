// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsmom {

void TrainConfig::validate() const {
  if (n_obs < 1 || n_inv < n_obs) throw std::invalid_argument("TrainConfig: need 1 <= n_obs <= n_inv");
  if (n_b < 0 || n_b % 2 != 0) throw std::invalid_argument("TrainConfig: n_b must be even");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning rate must be positive");
  if (iterations < 1) throw std::invalid_argument("TrainConfig: need at least one iteration");
  if (!(half_length > 0.0) || !(k > 0.0)) throw std::invalid_argument("TrainConfig: bad geometry");
  if (!(h_bound > 0.0)) throw std::invalid_argument("TrainConfig: h_bound must be positive");
}

Collocation sample_collocation(std::mt19937_64& rng, int n_obs, int n_inv, double half_length) {
  std::uint64_t span = static_cast<std::uint64_t>(n_inv - n_obs) + 1;
  Collocation c;
  c.n = n_obs + static_cast<int>(rng() % span);
  c.dx = 2.0 * half_length / c.n;
  c.midpoints.resize(c.n);
  for (int j = 0; j < c.n; ++j) c.midpoints[j] = (j + 0.5) * c.dx - half_length;
  return c;
}

Eigen::VectorXd boundary_points(double half_length, double dx, int n_b) {
  Eigen::VectorXd bx(n_b);
  int half = n_b / 2;
  for (int j = 0; j < half; ++j) bx[j] = -half_length + j * dx;
  for (int j = 0; j < half; ++j) bx[half + j] = half_length - j * dx;
  return bx;
}

namespace {

// Hat-function weights: index of the left node and the blend factor, with
// constant extrapolation outside the hull.
std::pair<Eigen::Index, double> hat_weight(const Eigen::VectorXd& xs, double x) {
  Eigen::Index n = xs.size();
  if (x <= xs[0]) return {0, 0.0};
  if (x >= xs[n - 1]) return {n - 2, 1.0};
  const double* begin = xs.data();
  Eigen::Index j = std::upper_bound(begin, begin + n, x) - begin - 1;
  j = std::min(j, n - 2);
  double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return {j, t};
}

}  // namespace

Eigen::VectorXd interp_linear(const Eigen::VectorXd& xs, const Eigen::VectorXd& vs,
                              const Eigen::VectorXd& targets) {
  if (xs.size() != vs.size() || xs.size() < 2) throw std::invalid_argument("interp_linear: need >= 2 samples");
  Eigen::VectorXd out(targets.size());
  for (Eigen::Index i = 0; i < targets.size(); ++i) {
    auto [j, t] = hat_weight(xs, targets[i]);
    out[i] = (1.0 - t) * vs[j] + t * vs[j + 1];
  }
  return out;
}

Eigen::VectorXcd interp_linear(const Eigen::VectorXd& xs, const Eigen::VectorXcd& vs,
                               const Eigen::VectorXd& targets) {
  if (xs.size() != vs.size() || xs.size() < 2) throw std::invalid_argument("interp_linear: need >= 2 samples");
  Eigen::VectorXcd out(targets.size());
  for (Eigen::Index i = 0; i < targets.size(); ++i) {
    auto [j, t] = hat_weight(xs, targets[i]);
    out[i] = (1.0 - t) * vs[j] + t * vs[j + 1];
  }
  return out;
}

Eigen::VectorXcd add_noise(const Eigen::VectorXcd& values, double eps, std::mt19937_64& rng) {
  if (eps < 0.0) throw std::invalid_argument("add_noise: eps must be >= 0");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= (1.0 + eps * u(rng));
  return out;
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& values, double eps, std::mt19937_64& rng) {
  if (eps < 0.0) throw std::invalid_argument("add_noise: eps must be >= 0");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= (1.0 + eps * u(rng));
  return out;
}

void adam_step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, AdamState& state, double lr,
               double beta1, double beta2, double eps) {
  if (!grad.allFinite()) throw std::runtime_error("adam_step: non-finite gradient");
  if (state.t == 0) {
    state.m = Eigen::VectorXd::Zero(theta.size());
    state.v = Eigen::VectorXd::Zero(theta.size());
  }
  ++state.t;
  state.m = beta1 * state.m + (1.0 - beta1) * grad;
  state.v = beta2 * state.v + (1.0 - beta2) * grad.cwiseProduct(grad);
  double c1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  double c2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
  theta.array() -= lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + eps);
}

namespace {

struct StepWorkspace {
  ad::Tape tape;
  MlpJetBatch mlp;
};

double step_gradient_impl(const TrainConfig& cfg, const ObservationSet& obs, const MlpParams& params,
                          const Collocation& colloc, Eigen::VectorXd& grad, StepWorkspace& ws) {
  const bool tm = cfg.pol == Polarization::TM;
  const int nc = colloc.n;
  Eigen::VectorXd bx = boundary_points(cfg.half_length, colloc.dx, cfg.n_b);

  Eigen::VectorXd all_x(nc + cfg.n_b);
  all_x.head(nc) = colloc.midpoints;
  all_x.tail(cfg.n_b) = bx;
  ws.mlp.forward(params, all_x, cfg.half_length, cfg.h_bound);

  ws.tape.clear();
  SurfaceSamples<ad::Var> s;
  s.h.resize(static_cast<std::size_t>(nc));
  s.dh.resize(static_cast<std::size_t>(nc));
  if (tm) s.d2h.resize(static_cast<std::size_t>(nc));
  for (int i = 0; i < nc; ++i) {
    s.h[static_cast<std::size_t>(i)] = ws.tape.input(ws.mlp.h()[i]);
    s.dh[static_cast<std::size_t>(i)] = ws.tape.input(ws.mlp.h1()[i]);
    if (tm) s.d2h[static_cast<std::size_t>(i)] = ws.tape.input(ws.mlp.h2()[i]);
  }
  std::vector<ad::Var> h_bc(static_cast<std::size_t>(cfg.n_b));
  for (int j = 0; j < cfg.n_b; ++j) h_bc[static_cast<std::size_t>(j)] = ws.tape.input(ws.mlp.h()[nc + j]);

  ScatterProblem pb{cfg.pol, cfg.k, cfg.alpha, cfg.zeta, Grid{cfg.half_length, nc}};
  CxVec<ad::Var> pred = scattered_field(pb, s);

  Eigen::VectorXd bc_target = Eigen::VectorXd::Constant(cfg.n_b, cfg.boundary_value);
  ad::Var loss;
  if (cfg.data_case == DataCase::FullField) {
    Eigen::VectorXcd data = interp_linear(obs.x, obs.values, colloc.midpoints);
    loss = loss_full_field(pred, data, h_bc, bc_target, cfg.field_weight, cfg.bc_weight);
  } else {
    Eigen::VectorXd amp = interp_linear(obs.x, obs.amplitude, colloc.midpoints);
    std::vector<Eigen::Vector2d> pts(static_cast<std::size_t>(nc));
    for (int i = 0; i < nc; ++i) pts[static_cast<std::size_t>(i)] = {colloc.midpoints[i], cfg.zeta};
    Eigen::VectorXcd inc = incident_field(pb, pts);
    loss = loss_phaseless(pred, inc, amp, h_bc, bc_target, cfg.field_weight, cfg.bc_weight);
  }

  ws.tape.backward(loss);

  Eigen::VectorXd hbar = Eigen::VectorXd::Zero(nc + cfg.n_b);
  Eigen::VectorXd h1bar = Eigen::VectorXd::Zero(nc + cfg.n_b);
  Eigen::VectorXd h2bar = Eigen::VectorXd::Zero(nc + cfg.n_b);
  for (int i = 0; i < nc; ++i) {
    hbar[i] = ws.tape.grad(s.h[static_cast<std::size_t>(i)]);
    h1bar[i] = ws.tape.grad(s.dh[static_cast<std::size_t>(i)]);
    if (tm) h2bar[i] = ws.tape.grad(s.d2h[static_cast<std::size_t>(i)]);
  }
  for (int j = 0; j < cfg.n_b; ++j) hbar[nc + j] = ws.tape.grad(h_bc[static_cast<std::size_t>(j)]);

  ws.mlp.backward(params, hbar, h1bar, h2bar, grad);
  return loss.v;
}

}  // namespace

double train_step_gradient(const TrainConfig& cfg, const ObservationSet& obs, const MlpParams& params,
                           const Collocation& colloc, Eigen::VectorXd& grad) {
  StepWorkspace ws;
  return step_gradient_impl(cfg, obs, params, colloc, grad, ws);
}

TrainResult train(const TrainConfig& cfg, const ObservationSet& obs) {
  cfg.validate();
  if (obs.x.size() != cfg.n_obs) throw std::invalid_argument("train: observation count does not match n_obs");
  if (obs.kind != cfg.data_case) throw std::invalid_argument("train: observation kind does not match the configured data case");

  MlpParams params(cfg.hidden_layers, cfg.neurons);
  glorot_init(params, cfg.seed);

  std::mt19937_64 colloc_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  StepWorkspace ws;
  AdamState adam;
  Eigen::VectorXd grad(params.theta.size());
  TrainResult res;
  res.loss_history.reserve(static_cast<std::size_t>(cfg.iterations));

  for (int t = 1; t <= cfg.iterations; ++t) {
    Collocation colloc = sample_collocation(colloc_rng, cfg.n_obs, cfg.n_inv, cfg.half_length);
    double loss;
    try {
      loss = step_gradient_impl(cfg, obs, params, colloc, grad, ws);
      adam_step(params.theta, grad, adam, cfg.learning_rate);
    } catch (const std::exception& e) {
      throw std::runtime_error("train: iteration " + std::to_string(t) + ": " + e.what());
    }
    res.loss_history.push_back(loss);
  }

  res.report_x = obs.x;
  ws.mlp.forward(params, res.report_x, cfg.half_length, cfg.h_bound);
  res.report_h = ws.mlp.h();
  res.params = std::move(params);
  return res;
}

double l2_error_percent(const Eigen::VectorXd& recon, const Eigen::VectorXd& truth) {
  if (recon.size() != truth.size()) throw std::invalid_argument("l2_error_percent: size mismatch");
  double denom = truth.norm();
  if (!(denom > 0.0)) throw std::invalid_argument("l2_error_percent: zero reference surface");
  return 100.0 * (recon - truth).norm() / denom;
}

}  // namespace rsmom
