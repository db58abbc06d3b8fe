// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/experiment.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace rsmom {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ExperimentSpec make_preset(const std::string& name) {
  ExperimentSpec s;
  s.train.pol = Polarization::TE;
  s.train.data_case = DataCase::FullField;
  s.train.half_length = 8.0;
  s.train.k = 2.0 * kPi;
  s.train.alpha = -kPi / 4.0;
  s.train.zeta = 0.5;
  s.train.n_obs = 240;
  s.train.n_inv = 480;
  s.train.hidden_layers = 4;
  s.train.neurons = 256;
  s.train.iterations = 1500;
  s.corr_length = 2.0 / 3.0;
  s.peak_to_trough = 0.4;
  s.noise = 0.0;

  auto phaseless = [&](int layers, int neurons) {
    s.train.data_case = DataCase::Phaseless;
    s.train.hidden_layers = layers;
    s.train.neurons = neurons;
    s.train.iterations = 2000;
  };

  if (name == "te-a" || name == "baseline") {
    // defaults above
  } else if (name == "te-b") {
    phaseless(6, 512);
  } else if (name == "tm-a") {
    s.train.pol = Polarization::TM;
  } else if (name == "tm-b") {
    s.train.pol = Polarization::TM;
    phaseless(8, 512);
  } else if (name == "highfreq") {
    // High-frequency variant: k = 6.67 pi, grazing angle -pi/9 (10 degrees).
    s.train.k = 6.67 * kPi;
    s.train.alpha = -kPi / 9.0;
    s.train.zeta = 0.6;
    s.peak_to_trough = 0.6;
  } else if (name == "desk") {
    s.train.half_length = 4.0;
    s.train.n_obs = 120;
    s.train.n_inv = 240;
    s.train.iterations = 600;
    s.train.hidden_layers = 4;
    s.train.neurons = 64;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return s;
}

std::vector<std::string> preset_names() { return {"baseline", "te-a", "te-b", "tm-a", "tm-b", "highfreq", "desk"}; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SurfaceRealization make_truth_surface(const ExperimentSpec& spec, std::uint64_t surface_seed) {
  Grid grid = make_grid(spec.train.half_length, spec.train.n_obs);
  if (spec.peak_to_trough == 0.0) return flat_surface(grid);
  GaussianSurfaceModel model(spec.train.half_length, spec.corr_length, surface_seed);
  return make_surface(model, grid, spec.taper_margin, spec.peak_to_trough);
}

ObservationSet simulate_observations(const ExperimentSpec& spec, const SurfaceRealization& truth,
                                     std::uint64_t noise_seed) {
  const TrainConfig& tc = spec.train;
  ScatterProblem pb{tc.pol, tc.k, tc.alpha, tc.zeta, truth.grid};

  SurfaceSamples<double> s;
  s.h.assign(truth.h.data(), truth.h.data() + truth.h.size());
  s.dh.assign(truth.dh.data(), truth.dh.data() + truth.dh.size());
  s.d2h.assign(truth.d2h.data(), truth.d2h.data() + truth.d2h.size());
  check_zeta_above(pb, s);

  CxVec<double> psi_s = scattered_field(pb, s);

  ObservationSet obs;
  obs.x = truth.grid.midpoints();
  obs.zeta = tc.zeta;
  obs.kind = tc.data_case;
  obs.k = tc.k;
  obs.alpha = tc.alpha;
  obs.pol = tc.pol;

  Eigen::VectorXcd scattered(psi_s.size());
  for (Eigen::Index i = 0; i < psi_s.size(); ++i) scattered[i] = {psi_s[i].re, psi_s[i].im};

  std::mt19937_64 rng(noise_seed);
  if (tc.data_case == DataCase::FullField) {
    obs.values = add_noise(scattered, spec.noise, rng);
  } else {
    std::vector<Eigen::Vector2d> pts(static_cast<std::size_t>(obs.x.size()));
    for (Eigen::Index i = 0; i < obs.x.size(); ++i) pts[static_cast<std::size_t>(i)] = {obs.x[i], tc.zeta};
    Eigen::VectorXcd inc = incident_field(pb, pts);
    Eigen::VectorXd amp = (scattered + inc).cwiseAbs();
    obs.amplitude = add_noise(amp, spec.noise, rng);
  }
  return obs;
}

SingleRun run_single(const ExperimentSpec& spec, std::uint64_t run_seed) {
  SurfaceRealization truth = make_truth_surface(spec, derive_seed(run_seed, 1));
  ObservationSet obs = simulate_observations(spec, truth, derive_seed(run_seed, 2));

  TrainConfig cfg = spec.train;
  cfg.seed = derive_seed(run_seed, 3);
  SingleRun out;
  out.result = train(cfg, obs);
  out.truth_h = truth.h;
  out.l2_error = l2_error_percent(out.result.report_h, truth.h);
  return out;
}

BatchStats batch_evaluate(const ExperimentSpec& spec, int n_runs) {
  if (n_runs < 1) throw std::invalid_argument("batch_evaluate: need at least one run");
  BatchStats stats;
  stats.runs.resize(static_cast<std::size_t>(n_runs));

  int workers = std::max(1, std::min(spec.workers, n_runs));
  std::mutex err_mutex;
  std::string first_error;

  auto work = [&](int w) {
    for (int r = w; r < n_runs; r += workers) {
      std::uint64_t run_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(1000 + r));
      try {
        SingleRun run = run_single(spec, run_seed);
        stats.runs[static_cast<std::size_t>(r)] =
            RunRecord{run_seed, run.l2_error, run.result.loss_history.empty() ? 0.0 : run.result.loss_history.back()};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (!first_error.empty()) throw std::runtime_error("batch_evaluate: " + first_error);

  double mean = 0.0;
  for (const auto& r : stats.runs) mean += r.l2_error;
  mean /= n_runs;
  double var = 0.0;
  for (const auto& r : stats.runs) var += (r.l2_error - mean) * (r.l2_error - mean);
  stats.mean = mean;
  stats.stddev = std::sqrt(var / n_runs);
  return stats;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "noise") return SweepAxis::Noise;
  if (name == "scale") return SweepAxis::Scale;
  if (name == "height") return SweepAxis::Height;
  if (name == "incidence") return SweepAxis::Incidence;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

ExperimentSpec apply_axis(const ExperimentSpec& base, SweepAxis axis, const SweepValue& v) {
  ExperimentSpec s = base;
  switch (axis) {
    case SweepAxis::Noise:
      s.noise = v.value;
      break;
    case SweepAxis::Scale:
      s.corr_length = v.value;
      // keep roughly 20 sampling points per correlation length available
      s.train.n_inv = std::max(s.train.n_inv,
                               static_cast<int>(std::ceil(40.0 * s.train.half_length / v.value)));
      break;
    case SweepAxis::Height:
      s.peak_to_trough = v.value;
      break;
    case SweepAxis::Incidence:
      s.train.k = v.value;
      s.train.alpha = v.alpha;
      break;
  }
  return s;
}

std::vector<SweepRow> sweep(const ExperimentSpec& base, SweepAxis axis, const std::vector<SweepValue>& values,
                            int n_runs) {
  if (values.empty()) throw std::invalid_argument("sweep: need at least one axis value");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (const auto& v : values) {
    ExperimentSpec s = apply_axis(base, axis, v);
    BatchStats st = batch_evaluate(s, n_runs);
    rows.push_back(SweepRow{v.value, st.mean, st.stddev, n_runs});
  }
  return rows;
}

}  // namespace rsmom
