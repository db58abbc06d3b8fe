// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsmom/inverse.hpp"
#include "rsmom/surface.hpp"

namespace rsmom {

/// One fully resolved experiment: a training configuration plus the ground
/// truth surface statistics, incidence, and noise used to manufacture the
/// observations. Presets fill all fields; everything is echoed to manifests.
struct ExperimentSpec {
  TrainConfig train;
  double corr_length = 2.0 / 3.0;
  double peak_to_trough = 0.4;
  double taper_margin = 1.0;
  double noise = 0.0;
  int runs = 1;
  int workers = 1;
  std::uint64_t seed = 1;
};

/// Named presets covering the standard workflows.
ExperimentSpec make_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Per-run sub-seeds, decorrelated by a splitmix step.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Forward-simulates the observation set for a ground-truth surface on the
/// n_obs grid: MOM solve, total-field amplitude for phaseless data, then a
/// single multiplicative noise draw. Optionally returns the truth heights on
/// the reporting grid.
ObservationSet simulate_observations(const ExperimentSpec& spec, const SurfaceRealization& truth,
                                     std::uint64_t noise_seed);

/// Ground truth for one run seed.
SurfaceRealization make_truth_surface(const ExperimentSpec& spec, std::uint64_t surface_seed);

struct RunRecord {
  std::uint64_t seed = 0;
  double l2_error = 0.0;
  double final_loss = 0.0;
};

struct BatchStats {
  double mean = 0.0;
  double stddev = 0.0;  // population convention
  std::vector<RunRecord> runs;
};

/// Repeats the full protocol (fresh surface, fresh noise, fresh init) over
/// independent run seeds, concurrently up to spec.workers.
BatchStats batch_evaluate(const ExperimentSpec& spec, int n_runs);

/// One full reconstruction for a single seed; returns the result plus the
/// l2 error against the generated truth.
struct SingleRun {
  TrainResult result;
  Eigen::VectorXd truth_h;
  double l2_error = 0.0;
};
SingleRun run_single(const ExperimentSpec& spec, std::uint64_t run_seed);

enum class SweepAxis { Noise, Scale, Height, Incidence };

struct SweepValue {
  double value = 0.0;  // axis coordinate (noise eps, corr length, height, or k)
  double alpha = 0.0;  // used by the incidence axis only
};

struct SweepRow {
  double value = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int runs = 0;
};

SweepAxis parse_axis(const std::string& name);

/// Applies one axis value to a copy of the base spec (the scale axis also
/// raises n_inv to keep ~20 sampling points per correlation length).
ExperimentSpec apply_axis(const ExperimentSpec& base, SweepAxis axis, const SweepValue& v);

std::vector<SweepRow> sweep(const ExperimentSpec& base, SweepAxis axis, const std::vector<SweepValue>& values,
                            int n_runs);

}  // namespace rsmom
