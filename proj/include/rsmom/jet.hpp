// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "rsmom/tape.hpp"

namespace rsmom {

/// Second-order jet in one variable: value, first and second derivative,
/// propagated by truncated Taylor arithmetic. The scalar T may itself be a
/// tape variable, which nests the spatial derivatives inside reverse mode.
template <typename T>
struct Jet2 {
  T v{};
  T d1{};
  T d2{};

  Jet2() = default;
  Jet2(T value) : v(std::move(value)), d1(T(0.0)), d2(T(0.0)) {}
  Jet2(T value, T first, T second) : v(std::move(value)), d1(std::move(first)), d2(std::move(second)) {}

  /// Seed for the independent variable: derivative `scale` (the chain-rule
  /// factor of any input normalization), curvature 0.
  static Jet2 variable(T value, double scale = 1.0) { return {value, T(scale), T(0.0)}; }
};

template <typename T>
inline Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

template <typename T>
inline Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

template <typename T>
inline Jet2<T> operator-(const Jet2<T>& a) {
  return {-a.v, -a.d1, -a.d2};
}

template <typename T>
inline Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * (a.d1 * b.d1) + a.v * b.d2};
}

template <typename T>
inline Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  T q = a.v / b.v;
  T q1 = (a.d1 - q * b.d1) / b.v;
  T q2 = (a.d2 - 2.0 * (q1 * b.d1) - q * b.d2) / b.v;
  return {q, q1, q2};
}

template <typename T>
inline Jet2<T> operator+(const Jet2<T>& a, double c) {
  return {a.v + c, a.d1, a.d2};
}
template <typename T>
inline Jet2<T> operator+(double c, const Jet2<T>& a) {
  return a + c;
}
template <typename T>
inline Jet2<T> operator-(const Jet2<T>& a, double c) {
  return {a.v - c, a.d1, a.d2};
}
template <typename T>
inline Jet2<T> operator-(double c, const Jet2<T>& a) {
  return {c - a.v, -a.d1, -a.d2};
}
template <typename T>
inline Jet2<T> operator*(const Jet2<T>& a, double c) {
  return {a.v * c, a.d1 * c, a.d2 * c};
}
template <typename T>
inline Jet2<T> operator*(double c, const Jet2<T>& a) {
  return a * c;
}
template <typename T>
inline Jet2<T> operator/(const Jet2<T>& a, double c) {
  return a * (1.0 / c);
}

namespace detail {
/// Composition f(g) from the value and first two derivatives of f at g.v.
template <typename T>
inline Jet2<T> compose(const Jet2<T>& g, T f, T fp, T fpp) {
  return {std::move(f), fp * g.d1, fpp * (g.d1 * g.d1) + fp * g.d2};
}
}  // namespace detail

template <typename T>
inline Jet2<T> exp(const Jet2<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return detail::compose(a, e, e, e);
}

template <typename T>
inline Jet2<T> log(const Jet2<T>& a) {
  using std::log;
  T inv = T(1.0) / a.v;
  return detail::compose(a, log(a.v), inv, -(inv * inv));
}

template <typename T>
inline Jet2<T> sin(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  T s = sin(a.v), c = cos(a.v);
  return detail::compose(a, s, c, -s);
}

template <typename T>
inline Jet2<T> cos(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  T s = sin(a.v), c = cos(a.v);
  return detail::compose(a, c, -s, -c);
}

template <typename T>
inline Jet2<T> sqrt(const Jet2<T>& a) {
  using std::sqrt;
  T r = sqrt(a.v);
  T fp = 0.5 / r;
  return detail::compose(a, r, fp, -0.5 * (fp / a.v));
}

template <typename T>
inline Jet2<T> tanh(const Jet2<T>& a) {
  using std::tanh;
  T t = tanh(a.v);
  T sech2 = 1.0 - t * t;
  return detail::compose(a, t, sech2, -2.0 * (t * sech2));
}

/// Logistic sigmoid with s' = s(1-s), s'' = s'(1-2s).
template <typename T>
inline Jet2<T> sigmoid(const Jet2<T>& a) {
  using rsmom::ad::sigmoid;
  T s = sigmoid(a.v);
  T sp = s * (1.0 - s);
  return detail::compose(a, s, sp, sp * (1.0 - 2.0 * s));
}

}  // namespace rsmom
