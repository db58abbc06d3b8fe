// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <type_traits>
#include <utility>

namespace rsmom {

/// Complex value over a generic real scalar.
///
/// std::complex is only specified for the builtin floating-point types, so
/// the library carries its own (re, im) pair that works equally for double
/// and for tape-tracked autodiff scalars. All arithmetic is expressed in
/// terms of real operations on the components; no complex-calculus
/// convention is ever needed downstream.
template <typename T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(T(0.0)) {}
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
};

using Cxd = Complex<double>;

template <typename T>
inline Complex<T> operator+(const Complex<T>& a, const Complex<T>& b) {
  return {a.re + b.re, a.im + b.im};
}

template <typename T>
inline Complex<T> operator-(const Complex<T>& a, const Complex<T>& b) {
  return {a.re - b.re, a.im - b.im};
}

template <typename T>
inline Complex<T> operator-(const Complex<T>& a) {
  return {-a.re, -a.im};
}

template <typename T>
inline Complex<T> operator*(const Complex<T>& a, const Complex<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <typename T>
inline Complex<T> operator*(const Complex<T>& a, const T& s) {
  return {a.re * s, a.im * s};
}

template <typename T>
inline Complex<T> operator*(const T& s, const Complex<T>& a) {
  return a * s;
}

template <typename T>
  requires(!std::is_same_v<T, double>)
inline Complex<T> operator*(const Complex<T>& a, double s) {
  return {a.re * s, a.im * s};
}

template <typename T>
  requires(!std::is_same_v<T, double>)
inline Complex<T> operator*(double s, const Complex<T>& a) {
  return a * s;
}

template <typename T>
inline Complex<T> operator/(const Complex<T>& a, const Complex<T>& b) {
  T den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

template <typename T>
inline Complex<T>& operator+=(Complex<T>& a, const Complex<T>& b) {
  a.re = a.re + b.re;
  a.im = a.im + b.im;
  return a;
}

template <typename T>
inline Complex<T>& operator-=(Complex<T>& a, const Complex<T>& b) {
  a.re = a.re - b.re;
  a.im = a.im - b.im;
  return a;
}

template <typename T>
inline Complex<T> conj(const Complex<T>& a) {
  return {a.re, -a.im};
}

/// |z|^2 = re^2 + im^2.
template <typename T>
inline T abs2(const Complex<T>& a) {
  return a.re * a.re + a.im * a.im;
}

template <typename T>
inline T abs(const Complex<T>& a) {
  using std::sqrt;
  return sqrt(abs2(a));
}

/// Multiply by i (quarter-turn rotation), cheaper than a full product.
template <typename T>
inline Complex<T> times_i(const Complex<T>& a) {
  return {-a.im, a.re};
}

inline std::complex<double> to_std(const Cxd& a) { return {a.re, a.im}; }
inline Cxd from_std(const std::complex<double>& a) { return {a.real(), a.imag()}; }

}  // namespace rsmom
