// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: generate rough surfaces, run the direct scattering
// problem, reconstruct surfaces from field data, and sweep problem
// parameters. Every command writes a manifest that pins the exact inputs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "rsmom/experiment.hpp"
#include "rsmom/io.hpp"
#include "rsmom/jet.hpp"
#include "rsmom/specfun.hpp"

namespace fs = std::filesystem;
using namespace rsmom;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string pol_name(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }
std::string case_name(DataCase c) { return c == DataCase::FullField ? "A" : "B"; }

Polarization parse_pol(const std::string& s) {
  if (s == "TE" || s == "te") return Polarization::TE;
  if (s == "TM" || s == "tm") return Polarization::TM;
  throw std::runtime_error("polarization must be TE or TM");
}

DataCase parse_case(const std::string& s) {
  if (s == "A" || s == "a" || s == "full") return DataCase::FullField;
  if (s == "B" || s == "b" || s == "phaseless") return DataCase::Phaseless;
  throw std::runtime_error("data case must be A (full) or B (phaseless)");
}

struct CommonOpts {
  std::string out_dir = ".";
  std::string manifest_format = "kv";
  std::string preset = "baseline";
  std::uint64_t seed = 1;
  int runs = 1;
  int workers = 2;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out-dir", c.out_dir, "Output directory (created if missing)");
  cmd->add_option("--manifest", c.manifest_format, "Manifest format: kv or json")
      ->check(CLI::IsMember({"kv", "json"}));
  cmd->add_option("--preset", c.preset, "Configuration preset")->check(CLI::IsMember(preset_names()));
  cmd->add_option("--seed", c.seed, "Base random seed");
  cmd->add_option("--runs", c.runs, "Number of repeated runs where applicable");
  cmd->add_option("--workers", c.workers, "Concurrent runs for batched commands");
}

void write_manifest(const Manifest& m, const std::string& path_base, const std::string& fmt) {
  if (fmt == "json")
    m.write_json(path_base + ".manifest.json");
  else
    m.write_kv(path_base + ".manifest");
}

void fill_spec_manifest(Manifest& m, const ExperimentSpec& s) {
  m.set("polarization", pol_name(s.train.pol));
  m.set("data_case", case_name(s.train.data_case));
  m.set("half_length", s.train.half_length);
  m.set("k", s.train.k);
  m.set("alpha", s.train.alpha);
  m.set("zeta", s.train.zeta);
  m.set("n_obs", static_cast<long long>(s.train.n_obs));
  m.set("n_inv", static_cast<long long>(s.train.n_inv));
  m.set("n_b", static_cast<long long>(s.train.n_b));
  m.set("learning_rate", s.train.learning_rate);
  m.set("iterations", static_cast<long long>(s.train.iterations));
  m.set("hidden_layers", static_cast<long long>(s.train.hidden_layers));
  m.set("neurons", static_cast<long long>(s.train.neurons));
  m.set("h_bound", s.train.h_bound);
  m.set("field_weight", s.train.field_weight);
  m.set("bc_weight", s.train.bc_weight);
  m.set("boundary_value", s.train.boundary_value);
  m.set("corr_length", s.corr_length);
  m.set("peak_to_trough", s.peak_to_trough);
  m.set("taper_margin", s.taper_margin);
  m.set("noise", s.noise);
}

Grid grid_from_surface_csv(const Eigen::VectorXd& x) {
  if (x.size() < 2) throw std::runtime_error("surface file needs at least two rows");
  int n = static_cast<int>(x.size());
  double dx = x[1] - x[0];
  for (int i = 0; i + 1 < n; ++i)
    if (std::abs((x[i + 1] - x[i]) - dx) > 1e-9 * std::abs(dx))
      throw std::runtime_error("surface abscissae are not uniformly spaced midpoints");
  double L = -(x[0] - 0.5 * dx);
  if (std::abs((x[n - 1] + 0.5 * dx) - L) > 1e-9 * L)
    throw std::runtime_error("surface abscissae are not symmetric about zero");
  return make_grid(L, n);
}

// --------------------------------------------------------------------------

int cmd_generate(const CommonOpts& common, const ExperimentSpec& spec, int n_panels,
                 const std::string& out_name) {
  fs::create_directories(common.out_dir);
  Grid grid = make_grid(spec.train.half_length, n_panels);

  Eigen::VectorXd h;
  if (spec.peak_to_trough == 0.0) {
    h = Eigen::VectorXd::Zero(grid.n_panels);
  } else {
    GaussianSurfaceModel model(spec.train.half_length, spec.corr_length, common.seed);
    h = make_surface(model, grid, spec.taper_margin, spec.peak_to_trough).h;
  }

  std::string path = (fs::path(common.out_dir) / out_name).string();
  write_surface_csv(path, grid.midpoints(), h);

  Manifest m;
  m.set("command", "generate");
  m.set("preset", common.preset);
  m.set("seed", static_cast<long long>(common.seed));
  m.set("n_panels", static_cast<long long>(n_panels));
  fill_spec_manifest(m, spec);
  m.set("output", out_name);
  write_manifest(m, path, common.manifest_format);

  std::printf("wrote %s (%d rows)\n", path.c_str(), grid.n_panels);
  return 0;
}

int cmd_forward(const CommonOpts& common, const ExperimentSpec& spec, const std::string& surface_path,
                const std::string& out_name) {
  fs::create_directories(common.out_dir);
  auto [x, h] = read_surface_csv(surface_path);
  Grid grid = grid_from_surface_csv(x);

  SurfaceRealization surf;
  surf.grid = grid;
  surf.h = h;
  std::tie(surf.dh, surf.d2h) = finite_difference_derivatives(h, grid);

  ExperimentSpec s = spec;
  s.train.half_length = grid.half_length;
  s.train.n_obs = grid.n_panels;

  ObservationSet obs = simulate_observations(s, surf, common.seed);

  std::string path = (fs::path(common.out_dir) / out_name).string();
  if (obs.kind == DataCase::FullField)
    write_field_csv(path, obs.x, obs.values);
  else
    write_field_csv(path, obs.x, obs.amplitude);

  Manifest meta;
  meta.set("command", "forward");
  meta.set("surface", surface_path);
  meta.set("seed", static_cast<long long>(common.seed));
  fill_spec_manifest(meta, s);
  meta.set("n_panels", static_cast<long long>(grid.n_panels));
  meta.write_kv(path + ".meta");
  write_manifest(meta, path, common.manifest_format);

  std::printf("wrote %s (+ .meta sidecar)\n", path.c_str());
  return 0;
}

int cmd_reconstruct(const CommonOpts& common, ExperimentSpec spec, const std::string& field_path,
                    const std::string& truth_path, const std::string& prefix, bool k_given,
                    bool zeta_given) {
  fs::create_directories(common.out_dir);
  FieldCsv field = read_field_csv(field_path);
  Manifest meta = Manifest::read_kv(field_path + ".meta");

  // The sidecar is authoritative for the physics; explicit flags must agree.
  double meta_k = meta.get_double("k");
  double meta_zeta = meta.get_double("zeta");
  if (k_given && std::abs(meta_k - spec.train.k) > 1e-12 * std::abs(meta_k))
    throw std::runtime_error("wavenumber disagrees with the field metadata (" + meta.get("k") + ")");
  if (zeta_given && std::abs(meta_zeta - spec.train.zeta) > 1e-12)
    throw std::runtime_error("zeta disagrees with the field metadata (" + meta.get("zeta") + ")");
  spec.train.k = meta_k;
  spec.train.zeta = meta_zeta;
  spec.train.alpha = meta.get_double("alpha");
  spec.train.half_length = meta.get_double("half_length");
  spec.train.pol = parse_pol(meta.get("polarization"));
  spec.train.data_case = parse_case(meta.get("data_case"));
  spec.train.n_obs = static_cast<int>(field.x.size());
  if (spec.train.n_inv < spec.train.n_obs) spec.train.n_inv = 2 * spec.train.n_obs;
  if ((spec.train.data_case == DataCase::Phaseless) != field.phaseless)
    throw std::runtime_error("field file kind does not match the metadata data_case");

  ObservationSet obs;
  obs.x = field.x;
  obs.zeta = spec.train.zeta;
  obs.kind = spec.train.data_case;
  obs.values = field.values;
  obs.amplitude = field.amplitude;
  obs.k = spec.train.k;
  obs.alpha = spec.train.alpha;
  obs.pol = spec.train.pol;

  spec.train.seed = common.seed;
  TrainResult res = train(spec.train, obs);

  std::string base = (fs::path(common.out_dir) / prefix).string();
  write_surface_csv(base + "surface.csv", res.report_x, res.report_h);
  write_loss_csv(base + "loss.csv", res.loss_history);
  save_checkpoint(res.params, base + "params.ckpt");

  Manifest m;
  m.set("command", "reconstruct");
  m.set("field", field_path);
  m.set("seed", static_cast<long long>(common.seed));
  fill_spec_manifest(m, spec);
  m.set("final_loss", res.loss_history.back());

  if (!truth_path.empty()) {
    auto [tx, th] = read_surface_csv(truth_path);
    if (tx.size() != res.report_x.size() || (tx - res.report_x).cwiseAbs().maxCoeff() > 1e-9)
      throw std::runtime_error("truth surface grid does not match the reporting grid");
    double err = l2_error_percent(res.report_h, th);
    m.set("l2_error_percent", err);
    std::printf("l2 error vs truth: %.3f%%\n", err);
  }
  write_manifest(m, base + "run", common.manifest_format);

  std::printf("wrote %ssurface.csv, %sloss.csv, %sparams.ckpt\n", base.c_str(), base.c_str(), base.c_str());
  return 0;
}

std::vector<SweepValue> parse_sweep_values(SweepAxis axis, const std::string& values) {
  std::vector<SweepValue> out;
  std::stringstream ss(values);
  std::string tok;
  char sep = (axis == SweepAxis::Incidence) ? ';' : ',';
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    SweepValue v;
    if (axis == SweepAxis::Incidence) {
      auto pos = tok.find(':');
      if (pos == std::string::npos)
        throw std::runtime_error("incidence values use k:alpha pairs separated by ';'");
      v.value = std::stod(tok.substr(0, pos));
      v.alpha = std::stod(tok.substr(pos + 1));
    } else {
      v.value = std::stod(tok);
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("sweep: no axis values given");
  return out;
}

int cmd_sweep(const CommonOpts& common, ExperimentSpec spec, const std::string& axis_name,
              const std::string& values, const std::string& out_name) {
  fs::create_directories(common.out_dir);
  SweepAxis axis = parse_axis(axis_name);
  std::vector<SweepValue> vals = parse_sweep_values(axis, values);

  spec.seed = common.seed;
  spec.workers = common.workers;

  std::string path = (fs::path(common.out_dir) / out_name).string();
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("sweep: cannot open " + path);
  csv << "axis,value,mean_error_percent,std_error_percent,runs\n";

  std::vector<SweepRow> rows;
  for (const auto& v : vals) {
    ExperimentSpec pt = apply_axis(spec, axis, v);
    BatchStats st = batch_evaluate(pt, common.runs);
    rows.push_back(SweepRow{v.value, st.mean, st.stddev, common.runs});
    csv << axis_name << "," << format_shortest(v.value) << "," << format_shortest(st.mean) << ","
        << format_shortest(st.stddev) << "," << common.runs << "\n";
    csv.flush();  // partial results survive an aborted sweep
    std::printf("%s = %-8g mean = %6.2f%%  std = %5.2f%%  (%d runs)\n", axis_name.c_str(), v.value,
                st.mean, st.stddev, common.runs);
    std::fflush(stdout);
  }

  Manifest m;
  m.set("command", "sweep");
  m.set("axis", axis_name);
  m.set("values", values);
  m.set("runs", static_cast<long long>(common.runs));
  m.set("seed", static_cast<long long>(common.seed));
  m.set("std_convention", "population");
  fill_spec_manifest(m, spec);
  if (axis == SweepAxis::Noise && rows.size() >= 2) {
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      if (rows[i + 1].mean < rows[i].mean) monotone = false;
    m.set("monotone_trend", monotone ? "true" : "false");
    m.set("last_exceeds_first", rows.back().mean > rows.front().mean ? "true" : "false");
  }
  write_manifest(m, path, common.manifest_format);
  return 0;
}

// Quick oracle suite: a cut-down version of the acceptance physics checks.
int cmd_validate() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ", detail.c_str());
    if (!ok) ++failures;
  };

  {  // Wronskian sweep
    double worst = 0.0;
    for (double x = 0.05; x <= 500.0; x *= 1.1) {
      auto b0 = bessel_j0y0(x);
      auto b1 = bessel_j1y1(x);
      worst = std::max(worst, std::abs(b1.j * b0.y - b0.j * b1.y - 2.0 / (kPi * x)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
    report("cylinder-function Wronskian", worst < 1e-6, buf);
  }

  for (auto pol : {Polarization::TE, Polarization::TM}) {  // flat-plate reflection
    ScatterProblem pb;
    pb.pol = pol;
    pb.k = 2.0 * kPi;
    pb.alpha = -kPi / 4.0;
    pb.zeta = 0.5;
    pb.grid = make_grid(8.0, 256);
    SurfaceSamples<double> s;
    s.h.assign(256, 0.0);
    s.dh.assign(256, 0.0);
    s.d2h.assign(256, 0.0);
    CxVec<double> psi = scattered_field(pb, s);
    double refl = pol == Polarization::TE ? -1.0 : 1.0;
    double num = 0, den = 0;
    for (int i = 0; i < 256; ++i) {
      double x = pb.grid.midpoint(i);
      if (std::abs(x) > 4.0) continue;
      double ph = pb.k * (std::cos(pb.alpha) * x - std::sin(pb.alpha) * pb.zeta);
      std::complex<double> e = refl * std::exp(std::complex<double>(0, ph));
      num += std::norm(std::complex<double>(psi[i].re, psi[i].im) - e);
      den += std::norm(e);
    }
    double rms = std::sqrt(num / den);
    char buf[64];
    std::snprintf(buf, sizeof buf, "rms %.3f", rms);
    report(pol == Polarization::TE ? "flat-plate reflection (TE)" : "flat-plate reflection (TM)",
           rms < 0.05, buf);
  }

  {  // surrogate jets vs differences
    MlpParams p(3, 32);
    glorot_init(p, 2);
    p.theta *= 3.0;
    double L = 8.0;
    bool ok = true;
    for (double x : {-5.0, -1.0, 2.5, 7.0}) {
      auto jet = mlp_forward(p, Jet2<double>::variable(x / L, 1.0 / L), 1.0);
      double s1 = 1e-4 * L;
      auto v = [&](double xx) { return mlp_forward(p, Jet2<double>::variable(xx / L, 1.0 / L), 1.0).v; };
      double fd1 = (v(x + s1) - v(x - s1)) / (2 * s1);
      if (std::abs(jet.d1 - fd1) > 1e-5 * std::max(1e-6, std::abs(fd1))) ok = false;
    }
    report("surrogate spatial jets", ok, "");
  }

  {  // tracked solve adjoint
    ad::Tape tape;
    int n = 3;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::MatrixXcd A0(n, n);
    Eigen::VectorXcd b0(n);
    for (int i = 0; i < n; ++i) {
      b0[i] = {u(rng), u(rng)};
      for (int j = 0; j < n; ++j) A0(i, j) = {u(rng) + (i == j ? 3.0 : 0.0), u(rng)};
    }
    CxMat<ad::Var> A(n, n);
    CxVec<ad::Var> b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = {tape.input(A0(i, j).real()), tape.input(A0(i, j).imag())};
      b[i] = {tape.input(b0[i].real()), tape.input(b0[i].imag())};
    }
    auto y = linsolve(A, b);
    ad::Var loss(0.0);
    for (int i = 0; i < n; ++i) loss += abs2(y[i]);
    tape.backward(loss);
    auto loss_of = [&](const Eigen::MatrixXcd& M) { return M.partialPivLu().solve(b0).squaredNorm(); };
    double eps = 1e-6;
    Eigen::MatrixXcd Ap = A0, Am = A0;
    Ap(1, 2) += eps;
    Am(1, 2) -= eps;
    double fd = (loss_of(Ap) - loss_of(Am)) / (2 * eps);
    double got = tape.grad(A(1, 2).re);
    report("linear-solve adjoint", std::abs(got - fd) < 1e-6 * std::max(1.0, std::abs(fd)), "");
  }

  std::printf("%s\n", failures == 0 ? "validate: all checks passed" : "validate: FAILURES present");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rough-surface scattering: direct MOM solver and neural-surrogate reconstruction"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a Gaussian-correlated rough surface CSV");
  CommonOpts gen_common;
  double gen_l = -1, gen_height = -1, gen_L = -1, gen_margin = -1;
  int gen_n = 240;
  std::string gen_out = "surface.csv";
  add_common(gen, gen_common);
  gen->add_option("--l", gen_l, "Correlation length (wavelengths)");
  gen->add_option("--height", gen_height, "Peak-to-trough height (wavelengths)");
  gen->add_option("--L", gen_L, "Half length of the domain (wavelengths)");
  gen->add_option("--margin", gen_margin, "Taper margin (wavelengths)");
  gen->add_option("--N", gen_n, "Number of panels / CSV rows");
  gen->add_option("--out", gen_out, "Output file name");

  // forward
  auto* fwd = app.add_subcommand("forward", "Solve the direct problem for a surface file");
  CommonOpts fwd_common;
  std::string fwd_surface, fwd_out = "field.csv", fwd_pol = "", fwd_case = "";
  double fwd_k = -1, fwd_alpha = 99, fwd_zeta = -1, fwd_eps = -1;
  add_common(fwd, fwd_common);
  fwd->add_option("--surface", fwd_surface, "Input surface CSV")->required();
  fwd->add_option("--pol", fwd_pol, "Polarization TE|TM");
  fwd->add_option("--case", fwd_case, "Data case A (full) | B (phaseless)");
  fwd->add_option("--k", fwd_k, "Wavenumber (rad per wavelength unit)");
  fwd->add_option("--alpha", fwd_alpha, "Grazing angle (rad)");
  fwd->add_option("--zeta", fwd_zeta, "Observation height (wavelengths)");
  fwd->add_option("--epsilon", fwd_eps, "Multiplicative noise level");
  fwd->add_option("--out", fwd_out, "Output field CSV name");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Recover a surface from a field file");
  CommonOpts rec_common;
  std::string rec_field, rec_truth, rec_prefix = "recon_";
  int rec_iterations = -1, rec_layers = -1, rec_neurons = -1, rec_ninv = -1, rec_nb = -1;
  double rec_lr = -1, rec_hbound = -1, rec_k = -1, rec_zeta = -1;
  add_common(rec, rec_common);
  rec->add_option("--field", rec_field, "Input field CSV (with .meta sidecar)")->required();
  rec->add_option("--truth", rec_truth, "Optional ground-truth surface CSV for the error report");
  rec->add_option("--out-prefix", rec_prefix, "Prefix for output files");
  rec->add_option("--iterations", rec_iterations, "Training iterations");
  rec->add_option("--layers", rec_layers, "Hidden layers");
  rec->add_option("--neurons", rec_neurons, "Neurons per hidden layer");
  rec->add_option("--n-inv", rec_ninv, "Maximum collocation panels per iteration");
  rec->add_option("--n-b", rec_nb, "Boundary constraint points");
  rec->add_option("--lr", rec_lr, "Learning rate");
  rec->add_option("--h-bound", rec_hbound, "Output normalization bound");
  auto* rec_k_opt = rec->add_option("--k", rec_k, "Wavenumber (must match the metadata)");
  auto* rec_zeta_opt = rec->add_option("--zeta", rec_zeta, "Observation height (must match the metadata)");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Evaluate reconstruction statistics along a parameter axis");
  CommonOpts swp_common;
  std::string swp_axis, swp_values, swp_out = "sweep.csv";
  int swp_iterations = -1, swp_layers = -1, swp_neurons = -1, swp_ninv = -1, swp_nobs = -1;
  double swp_L = -1;
  add_common(swp, swp_common);
  swp->add_option("--axis", swp_axis, "noise | scale | height | incidence")->required();
  swp->add_option("--values", swp_values, "Comma-separated values (incidence: k:alpha;k:alpha)")->required();
  swp->add_option("--out", swp_out, "Statistics CSV name");
  swp->add_option("--iterations", swp_iterations, "Training iterations");
  swp->add_option("--layers", swp_layers, "Hidden layers");
  swp->add_option("--neurons", swp_neurons, "Neurons per hidden layer");
  swp->add_option("--n-inv", swp_ninv, "Maximum collocation panels");
  swp->add_option("--n-obs", swp_nobs, "Observation points");
  swp->add_option("--L", swp_L, "Half length (wavelengths)");

  // validate
  auto* val = app.add_subcommand("validate", "Run the built-in physics oracle suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ExperimentSpec spec = make_preset(gen_common.preset);
      if (gen_l > 0) spec.corr_length = gen_l;
      if (gen_height >= 0) spec.peak_to_trough = gen_height;
      if (gen_L > 0) spec.train.half_length = gen_L;
      if (gen_margin > 0) spec.taper_margin = gen_margin;
      return cmd_generate(gen_common, spec, gen_n, gen_out);
    }
    if (fwd->parsed()) {
      ExperimentSpec spec = make_preset(fwd_common.preset);
      if (!fwd_pol.empty()) spec.train.pol = parse_pol(fwd_pol);
      if (!fwd_case.empty()) spec.train.data_case = parse_case(fwd_case);
      if (fwd_k > 0) spec.train.k = fwd_k;
      if (fwd_alpha < 10) spec.train.alpha = fwd_alpha;
      if (fwd_zeta > 0) spec.train.zeta = fwd_zeta;
      if (fwd_eps >= 0) spec.noise = fwd_eps;
      return cmd_forward(fwd_common, spec, fwd_surface, fwd_out);
    }
    if (rec->parsed()) {
      ExperimentSpec spec = make_preset(rec_common.preset);
      if (rec_iterations > 0) spec.train.iterations = rec_iterations;
      if (rec_layers > 0) spec.train.hidden_layers = rec_layers;
      if (rec_neurons > 0) spec.train.neurons = rec_neurons;
      if (rec_ninv > 0) spec.train.n_inv = rec_ninv;
      if (rec_nb >= 0) spec.train.n_b = rec_nb;
      if (rec_lr > 0) spec.train.learning_rate = rec_lr;
      if (rec_hbound > 0) spec.train.h_bound = rec_hbound;
      if (rec_k > 0) spec.train.k = rec_k;
      if (rec_zeta > 0) spec.train.zeta = rec_zeta;
      return cmd_reconstruct(rec_common, spec, rec_field, rec_truth, rec_prefix,
                             rec_k_opt->count() > 0, rec_zeta_opt->count() > 0);
    }
    if (swp->parsed()) {
      ExperimentSpec spec = make_preset(swp_common.preset);
      if (swp_iterations > 0) spec.train.iterations = swp_iterations;
      if (swp_layers > 0) spec.train.hidden_layers = swp_layers;
      if (swp_neurons > 0) spec.train.neurons = swp_neurons;
      if (swp_ninv > 0) spec.train.n_inv = swp_ninv;
      if (swp_nobs > 0) spec.train.n_obs = swp_nobs;
      if (swp_L > 0) spec.train.half_length = swp_L;
      return cmd_sweep(swp_common, spec, swp_axis, swp_values, swp_out);
    }
    if (val->parsed()) return cmd_validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
