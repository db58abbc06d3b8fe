// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/mlp.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rsmom {

MlpParams::MlpParams(int hidden_layers, int neurons) {
  if (hidden_layers < 0 || (hidden_layers > 0 && neurons < 1))
    throw std::invalid_argument("MlpParams: bad shape");
  sizes_.push_back(1);
  for (int i = 0; i < hidden_layers; ++i) sizes_.push_back(neurons);
  sizes_.push_back(1);
  std::ptrdiff_t total = 0;
  for (int l = 0; l + 1 < static_cast<int>(sizes_.size()); ++l) {
    offsets_.push_back(total);
    total += static_cast<std::ptrdiff_t>(sizes_[l]) * sizes_[l + 1] + sizes_[l + 1];
  }
  theta = Eigen::VectorXd::Zero(total);
}

Eigen::Map<const Eigen::MatrixXd> MlpParams::weight(int layer) const {
  return {theta.data() + offset(layer), fan_out(layer), fan_in(layer)};
}
Eigen::Map<const Eigen::VectorXd> MlpParams::bias(int layer) const {
  return {theta.data() + offset(layer) + static_cast<std::ptrdiff_t>(fan_out(layer)) * fan_in(layer), fan_out(layer)};
}
Eigen::Map<Eigen::MatrixXd> MlpParams::weight(int layer) {
  return {theta.data() + offset(layer), fan_out(layer), fan_in(layer)};
}
Eigen::Map<Eigen::VectorXd> MlpParams::bias(int layer) {
  return {theta.data() + offset(layer) + static_cast<std::ptrdiff_t>(fan_out(layer)) * fan_in(layer), fan_out(layer)};
}

void glorot_init(MlpParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int l = 0; l < p.layer_count(); ++l) {
    double bound = std::sqrt(6.0 / (p.fan_in(l) + p.fan_out(l)));
    // The read-out layer starts two orders smaller so the surrogate begins
    // essentially flat; a full-scale random read-out puts the initial surface
    // at a large fraction of the height bound, which strands the optimizer in
    // an oscillatory-field local minimum.
    if (l == p.layer_count() - 1) bound *= 0.3;
    std::uniform_real_distribution<double> u(-bound, bound);
    auto W = p.weight(l);
    for (Eigen::Index j = 0; j < W.cols(); ++j)
      for (Eigen::Index i = 0; i < W.rows(); ++i) W(i, j) = u(rng);
    p.bias(l).setZero();
  }
}

void MlpJetBatch::forward(const MlpParams& p, const Eigen::VectorXd& x, double half_length, double h_bound) {
  const int npts = static_cast<int>(x.size());
  const int nl = p.layer_count();
  in_scale_ = 1.0 / half_length;
  out_scale_ = h_bound;

  A_.assign(static_cast<std::size_t>(nl - 1), {});
  Z1_.assign(static_cast<std::size_t>(nl - 1), {});
  Z2_.assign(static_cast<std::size_t>(nl - 1), {});

  x0_ = (x.transpose() * in_scale_);
  Eigen::MatrixXd a = x0_;                                      // 1 x P
  Eigen::MatrixXd d1 = Eigen::MatrixXd::Constant(1, npts, in_scale_);
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(1, npts);

  for (int l = 0; l + 1 < nl; ++l) {
    auto W = p.weight(l);
    auto b = p.bias(l);
    Eigen::MatrixXd z = (W * a).colwise() + b;
    Z1_[static_cast<std::size_t>(l)] = W * d1;
    Z2_[static_cast<std::size_t>(l)] = W * d2;
    Eigen::MatrixXd s = ((1.0 + (-z.array()).exp()).inverse()).matrix();  // sigmoid
    Eigen::ArrayXXd sp = s.array() * (1.0 - s.array());
    Eigen::ArrayXXd spp = sp * (1.0 - 2.0 * s.array());
    A_[static_cast<std::size_t>(l)] = s;
    a = s;
    d1 = (sp * Z1_[static_cast<std::size_t>(l)].array()).matrix();
    d2 = (spp * Z1_[static_cast<std::size_t>(l)].array().square() + sp * Z2_[static_cast<std::size_t>(l)].array()).matrix();
  }
  auto W = p.weight(nl - 1);
  auto b = p.bias(nl - 1);
  h_ = (out_scale_ * ((W * a).colwise() + b)).row(0).transpose();
  h1_ = (out_scale_ * (W * d1)).row(0).transpose();
  h2_ = (out_scale_ * (W * d2)).row(0).transpose();
}

void MlpJetBatch::backward(const MlpParams& p, const Eigen::VectorXd& hbar, const Eigen::VectorXd& h1bar,
                           const Eigen::VectorXd& h2bar, Eigen::VectorXd& grad) const {
  const int nl = p.layer_count();
  const int npts = static_cast<int>(hbar.size());
  grad.setZero(p.theta.size());

  // Rebuild the jet streams of each hidden layer from the cached (A, Z1, Z2).
  auto d1_of = [&](int l) {
    Eigen::ArrayXXd sp = A_[static_cast<std::size_t>(l)].array() * (1.0 - A_[static_cast<std::size_t>(l)].array());
    return (sp * Z1_[static_cast<std::size_t>(l)].array()).matrix().eval();
  };
  auto d2_of = [&](int l) {
    Eigen::ArrayXXd s = A_[static_cast<std::size_t>(l)].array();
    Eigen::ArrayXXd sp = s * (1.0 - s);
    Eigen::ArrayXXd spp = sp * (1.0 - 2.0 * s);
    return (spp * Z1_[static_cast<std::size_t>(l)].array().square() + sp * Z2_[static_cast<std::size_t>(l)].array()).matrix().eval();
  };

  // Output layer (linear).
  Eigen::RowVectorXd zb = out_scale_ * hbar.transpose();
  Eigen::RowVectorXd zb1 = out_scale_ * h1bar.transpose();
  Eigen::RowVectorXd zb2 = out_scale_ * h2bar.transpose();

  Eigen::MatrixXd sbar, sbar1, sbar2;
  {
    int l = nl - 1;
    auto W = p.weight(l);
    const Eigen::MatrixXd& a = A_[static_cast<std::size_t>(l - 1)];
    Eigen::MatrixXd ad1 = d1_of(l - 1), ad2 = d2_of(l - 1);
    Eigen::Map<Eigen::MatrixXd> Wg(grad.data() + p.offset(l), p.fan_out(l), p.fan_in(l));
    Eigen::Map<Eigen::VectorXd> bg(grad.data() + p.offset(l) + static_cast<std::ptrdiff_t>(p.fan_out(l)) * p.fan_in(l), p.fan_out(l));
    Wg = zb * a.transpose() + zb1 * ad1.transpose() + zb2 * ad2.transpose();
    bg[0] = zb.sum();
    sbar = W.transpose() * zb;
    sbar1 = W.transpose() * zb1;
    sbar2 = W.transpose() * zb2;
  }

  for (int l = nl - 2; l >= 0; --l) {
    Eigen::ArrayXXd s = A_[static_cast<std::size_t>(l)].array();
    Eigen::ArrayXXd sp = s * (1.0 - s);
    Eigen::ArrayXXd spp = sp * (1.0 - 2.0 * s);
    Eigen::ArrayXXd sppp = spp * (1.0 - 2.0 * s) - 2.0 * sp * sp;
    const Eigen::ArrayXXd& z1 = Z1_[static_cast<std::size_t>(l)].array();
    const Eigen::ArrayXXd& z2 = Z2_[static_cast<std::size_t>(l)].array();

    Eigen::MatrixXd zv = (sbar.array() * sp + sbar1.array() * spp * z1 +
                          sbar2.array() * (sppp * z1.square() + spp * z2))
                             .matrix();
    Eigen::MatrixXd z1v = (sbar1.array() * sp + 2.0 * sbar2.array() * spp * z1).matrix();
    Eigen::MatrixXd z2v = (sbar2.array() * sp).matrix();

    Eigen::Map<Eigen::MatrixXd> Wg(grad.data() + p.offset(l), p.fan_out(l), p.fan_in(l));
    Eigen::Map<Eigen::VectorXd> bg(grad.data() + p.offset(l) + static_cast<std::ptrdiff_t>(p.fan_out(l)) * p.fan_in(l), p.fan_out(l));

    if (l == 0) {
      // Input streams are the normalized abscissa, the constant 1/L, and 0.
      Wg = zv * x0_.transpose() + z1v * Eigen::MatrixXd::Constant(npts, 1, in_scale_);
      bg = zv.rowwise().sum();
      break;
    }
    const Eigen::MatrixXd& a = A_[static_cast<std::size_t>(l - 1)];
    Eigen::MatrixXd ad1 = d1_of(l - 1), ad2 = d2_of(l - 1);
    Wg = zv * a.transpose() + z1v * ad1.transpose() + z2v * ad2.transpose();
    bg = zv.rowwise().sum();

    auto W = p.weight(l);
    sbar = W.transpose() * zv;
    sbar1 = W.transpose() * z1v;
    sbar2 = W.transpose() * z2v;
  }
}

void save_checkpoint(const MlpParams& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_checkpoint: cannot open " + path);
  f << "rsmom-mlp 1\n";
  f << "layers " << p.layer_count() << "\n";
  for (int l = 0; l < p.layer_count(); ++l) f << p.fan_out(l) << " " << p.fan_in(l) << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < p.theta.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", p.theta[i]);
    f << buf;
  }
}

MlpParams load_checkpoint(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_checkpoint: cannot open " + path);
  std::string magic;
  int version = 0;
  f >> magic >> version;
  if (magic != "rsmom-mlp" || version != 1) throw std::runtime_error("load_checkpoint: unsupported format");
  std::string key;
  int nl = 0;
  f >> key >> nl;
  if (key != "layers" || nl < 2) throw std::runtime_error("load_checkpoint: bad layer table");
  std::vector<std::pair<int, int>> shapes(static_cast<std::size_t>(nl));
  for (auto& sh : shapes) f >> sh.first >> sh.second;
  int hidden = nl - 1;
  int neurons = shapes[0].first;
  MlpParams p(hidden, neurons);
  if (p.layer_count() != nl) throw std::runtime_error("load_checkpoint: inconsistent shapes");
  for (int l = 0; l < nl; ++l)
    if (shapes[static_cast<std::size_t>(l)] != std::make_pair(p.fan_out(l), p.fan_in(l)))
      throw std::runtime_error("load_checkpoint: shape table does not describe a uniform surrogate");
  for (Eigen::Index i = 0; i < p.theta.size(); ++i)
    if (!(f >> p.theta[i])) throw std::runtime_error("load_checkpoint: truncated parameter vector");
  return p;
}

}  // namespace rsmom
