// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rsmom::ad {

class Tape;

/// A scalar on the computation graph. A default-constructed or
/// double-constructed Var is an untracked constant; Tape::input() and the
/// recorded operations return tracked values. Arithmetic between constants
/// folds away without touching the tape.
struct Var {
  Tape* tape = nullptr;
  std::int32_t id = -1;
  double v = 0.0;

  Var() = default;
  Var(double value) : v(value) {}
  bool tracked() const { return tape != nullptr; }
};

inline double value(const Var& x) { return x.v; }
inline double value(double x) { return x; }

/// Reverse-mode tape. Nodes carry at most two parents with precomputed
/// local partials; operations with many inputs and outputs (the complex
/// linear solve, the observation matvec) are recorded as custom ops whose
/// backward is a callback. Storage is reused across iterations via clear().
class Tape {
 public:
  struct CustomOp {
    std::int32_t first_out = 0;
    std::int32_t n_out = 0;
    std::vector<std::int32_t> parents;
    // Reads output adjoints through the tape and scatter-adds into parents.
    std::function<void(Tape&, const CustomOp&)> backward;
  };

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// New tracked leaf.
  Var input(double v) {
    Var x;
    x.tape = this;
    x.id = push_node(v, kNone, 0.0, kNone, 0.0);
    x.v = v;
    return x;
  }

  /// Tracked node with one parent and a registered local partial.
  Var record1(double v, const Var& a, double pa) {
    assert(a.tracked() && a.tape == this);
    Var x;
    x.tape = this;
    x.id = push_node(v, a.id, pa, kNone, 0.0);
    x.v = v;
    return x;
  }

  /// Tracked node with two parents.
  Var record2(double v, const Var& a, double pa, const Var& b, double pb) {
    assert(a.tracked() && b.tracked() && a.tape == b.tape);
    Var x;
    x.tape = this;
    x.id = push_node(v, a.id, pa, b.id, pb);
    x.v = v;
    return x;
  }

  /// General n-ary recording. Parents may include untracked constants
  /// (id < 0); their partials are dropped.
  Var record(double v, const std::vector<Var>& parents, const std::vector<double>& partials);

  /// Custom multi-output operation. `parent_ids` may contain -1 entries for
  /// constants; `backward` must skip them. Returns the first of n_out
  /// consecutively numbered output vars whose values are `out_values`.
  std::vector<Var> custom(std::vector<std::int32_t> parent_ids, const std::vector<double>& out_values,
                          std::function<void(Tape&, const CustomOp&)> backward);

  /// Reverse sweep from `loss` (seeded with cotangent 1). Fills the adjoint
  /// array; query with adjoint()/grad().
  void backward(const Var& loss);

  double adjoint(std::int32_t id) const { return adj_[static_cast<std::size_t>(id)]; }
  double grad(const Var& x) const { return x.tracked() ? adjoint(x.id) : 0.0; }
  void add_adjoint(std::int32_t id, double w) {
    if (id >= 0) adj_[static_cast<std::size_t>(id)] += w;
  }

  double node_value(std::int32_t id) const { return val_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  /// Drops all nodes but keeps capacity, so per-iteration graphs reuse the
  /// same allocations.
  void clear() {
    nodes_.clear();
    val_.clear();
    adj_.clear();
    custom_.clear();
  }

 private:
  static constexpr std::int32_t kNone = -1;
  // p0 values <= kCustomBase mark the last output of custom op index
  // (kCustomBase - p0).
  static constexpr std::int32_t kCustomBase = -2;

  struct Node {
    double w0, w1;
    std::int32_t p0, p1;
  };

  std::int32_t push_node(double v, std::int32_t p0, double w0, std::int32_t p1, double w1) {
    nodes_.push_back({w0, w1, p0, p1});
    val_.push_back(v);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::vector<Node> nodes_;
  std::vector<double> val_;
  std::vector<double> adj_;
  std::vector<CustomOp> custom_;
};

// ---------------------------------------------------------------------------
// Arithmetic. Each operation folds constants, otherwise records one node with
// the local partials evaluated at the operands' values.
// ---------------------------------------------------------------------------

namespace detail {
inline Tape* tape_of(const Var& a, const Var& b) {
  Tape* t = a.tape ? a.tape : b.tape;
  assert(!(a.tape && b.tape) || a.tape == b.tape);
  return t;
}
}  // namespace detail

inline Var operator+(const Var& a, const Var& b) {
  double v = a.v + b.v;
  Tape* t = detail::tape_of(a, b);
  if (!t) return Var(v);
  if (a.tracked() && b.tracked()) return t->record2(v, a, 1.0, b, 1.0);
  return t->record1(v, a.tracked() ? a : b, 1.0);
}

inline Var operator-(const Var& a, const Var& b) {
  double v = a.v - b.v;
  Tape* t = detail::tape_of(a, b);
  if (!t) return Var(v);
  if (a.tracked() && b.tracked()) return t->record2(v, a, 1.0, b, -1.0);
  if (a.tracked()) return t->record1(v, a, 1.0);
  return t->record1(v, b, -1.0);
}

inline Var operator-(const Var& a) {
  if (!a.tracked()) return Var(-a.v);
  return a.tape->record1(-a.v, a, -1.0);
}

inline Var operator*(const Var& a, const Var& b) {
  double v = a.v * b.v;
  Tape* t = detail::tape_of(a, b);
  if (!t) return Var(v);
  if (a.tracked() && b.tracked()) return t->record2(v, a, b.v, b, a.v);
  if (a.tracked()) return t->record1(v, a, b.v);
  return t->record1(v, b, a.v);
}

inline Var operator/(const Var& a, const Var& b) {
  double v = a.v / b.v;
  Tape* t = detail::tape_of(a, b);
  if (!t) return Var(v);
  if (a.tracked() && b.tracked()) return t->record2(v, a, 1.0 / b.v, b, -v / b.v);
  if (a.tracked()) return t->record1(v, a, 1.0 / b.v);
  return t->record1(v, b, -v / b.v);
}

inline Var operator+(const Var& a, double c) { return a + Var(c); }
inline Var operator+(double c, const Var& a) { return Var(c) + a; }
inline Var operator-(const Var& a, double c) { return a - Var(c); }
inline Var operator-(double c, const Var& a) { return Var(c) - a; }
inline Var operator*(const Var& a, double c) { return a * Var(c); }
inline Var operator*(double c, const Var& a) { return Var(c) * a; }
inline Var operator/(const Var& a, double c) { return a / Var(c); }
inline Var operator/(double c, const Var& a) { return Var(c) / a; }

inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }
inline Var& operator*=(Var& a, const Var& b) { return a = a * b; }

inline Var sqrt(const Var& a) {
  double v = std::sqrt(a.v);
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, 0.5 / v);
}

inline Var exp(const Var& a) {
  double v = std::exp(a.v);
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, v);
}

inline Var log(const Var& a) {
  double v = std::log(a.v);
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, 1.0 / a.v);
}

inline Var sin(const Var& a) {
  double v = std::sin(a.v);
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, std::cos(a.v));
}

inline Var cos(const Var& a) {
  double v = std::cos(a.v);
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, -std::sin(a.v));
}

inline Var tanh(const Var& a) {
  double v = std::tanh(a.v);
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, 1.0 - v * v);
}

inline Var sigmoid(const Var& a) {
  double v = 1.0 / (1.0 + std::exp(-a.v));
  if (!a.tracked()) return Var(v);
  return a.tape->record1(v, a, v * (1.0 - v));
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace rsmom::ad
