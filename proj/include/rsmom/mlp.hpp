// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "rsmom/jet.hpp"

namespace rsmom {

/// Fully connected surrogate 1 -> width -> ... -> width -> 1 with sigmoid
/// hidden activations and a linear output (zero hidden layers degenerates to
/// a single affine map, handy as a test fixture). Parameters live in one flat
/// vector (per layer: column-major weight block, then biases) so the
/// optimizer and checkpointing treat them uniformly.
class MlpParams {
 public:
  MlpParams() = default;
  MlpParams(int hidden_layers, int neurons);

  int layer_count() const { return static_cast<int>(sizes_.size()) - 1; }
  int fan_in(int layer) const { return sizes_[static_cast<std::size_t>(layer)]; }
  int fan_out(int layer) const { return sizes_[static_cast<std::size_t>(layer) + 1]; }

  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;
  Eigen::Map<Eigen::MatrixXd> weight(int layer);
  Eigen::Map<Eigen::VectorXd> bias(int layer);

  /// Offset of layer's weight block inside theta (biases follow the block).
  std::ptrdiff_t offset(int layer) const { return offsets_[static_cast<std::size_t>(layer)]; }

  const std::vector<int>& sizes() const { return sizes_; }

  Eigen::VectorXd theta;

 private:
  std::vector<int> sizes_;
  std::vector<std::ptrdiff_t> offsets_;
};

/// Uniform Glorot initialization, biases zero, deterministic under seed.
void glorot_init(MlpParams& p, std::uint64_t seed);

/// Pointwise surrogate evaluation on second-order jets, generic over the
/// scalar (double, or a tape variable to nest the spatial jets inside
/// reverse mode). `x_normalized` is the input after mapping to [-1, 1]; seed
/// its d1 with the chain-rule factor of that normalization. The output jet is
/// in physical units (scaled by `h_bound`).
template <typename T>
Jet2<T> mlp_forward(const MlpParams& p, Jet2<T> x_normalized, double h_bound) {
  std::vector<Jet2<T>> act(1, x_normalized), next;
  for (int layer = 0; layer < p.layer_count(); ++layer) {
    auto W = p.weight(layer);
    auto b = p.bias(layer);
    bool hidden = layer + 1 < p.layer_count();
    next.assign(static_cast<std::size_t>(p.fan_out(layer)), Jet2<T>(T(0.0)));
    for (int o = 0; o < p.fan_out(layer); ++o) {
      Jet2<T> z(T(b[o]));
      for (int i = 0; i < p.fan_in(layer); ++i) z = z + act[static_cast<std::size_t>(i)] * W(o, i);
      next[static_cast<std::size_t>(o)] = hidden ? sigmoid(z) : z;
    }
    act.swap(next);
  }
  return act[0] * h_bound;
}

/// Batched jet evaluation of the surrogate over many points, with a
/// layer-level reverse pass for the parameter gradient. Produces exactly the
/// same values and gradients as the pointwise jet evaluation recorded on the
/// tape, at dense-matrix cost.
class MlpJetBatch {
 public:
  /// x: physical abscissae; the input normalization is x/half_length, the
  /// output scaling h_bound.
  void forward(const MlpParams& p, const Eigen::VectorXd& x, double half_length, double h_bound);

  const Eigen::VectorXd& h() const { return h_; }
  const Eigen::VectorXd& h1() const { return h1_; }
  const Eigen::VectorXd& h2() const { return h2_; }

  /// Cotangents of (h, h', h'') in physical units; writes the parameter
  /// gradient (zeroing it first).
  void backward(const MlpParams& p, const Eigen::VectorXd& hbar, const Eigen::VectorXd& h1bar,
                const Eigen::VectorXd& h2bar, Eigen::VectorXd& grad) const;

 private:
  double in_scale_ = 1.0;
  double out_scale_ = 1.0;
  Eigen::RowVectorXd x0_;                // normalized input row
  std::vector<Eigen::MatrixXd> A_;       // hidden activations
  std::vector<Eigen::MatrixXd> Z1_, Z2_; // jet streams of the preactivations
  Eigen::VectorXd h_, h1_, h2_;
};

/// Versioned text checkpoint: layer shapes plus the flat parameter vector.
void save_checkpoint(const MlpParams& p, const std::string& path);
MlpParams load_checkpoint(const std::string& path);

}  // namespace rsmom
