#pragma once

#include <complex>

#include "hillgap/dd.hpp"

namespace hillgap {

// Minimal complex arithmetic over a real type T (double or dd_real).
// std::complex is unspecified for user types, and for double it pays for
// NaN/inf recovery the integrator never needs.
template <class T>
struct Cx {
  T re{};
  T im{};

  constexpr Cx() = default;
  constexpr Cx(const T& r) : re(r), im(0.0) {}  // NOLINT(implicit)
  constexpr Cx(const T& r, const T& i) : re(r), im(i) {}
  explicit Cx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }

  Cx& operator+=(const Cx& b) { re += b.re; im += b.im; return *this; }
  Cx& operator-=(const Cx& b) { re -= b.re; im -= b.im; return *this; }
  Cx& operator*=(const Cx& b) { return *this = *this * b; }

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const Cx& a, const T& s) { return {a.re * s, a.im * s}; }
  friend Cx operator*(const T& s, const Cx& a) { return {a.re * s, a.im * s}; }
  friend Cx operator/(const Cx& a, const T& s) { return {a.re / s, a.im / s}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    // Scale by the larger component to keep |b|^2 representable.
    using std::abs;
    T s = abs(b.re) > abs(b.im) ? abs(b.re) : abs(b.im);
    Cx bs{b.re / s, b.im / s};
    Cx as{a.re / s, a.im / s};
    T den = bs.re * bs.re + bs.im * bs.im;
    return {(as.re * bs.re + as.im * bs.im) / den, (as.im * bs.re - as.re * bs.im) / den};
  }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
};

template <class T>
Cx<T> conj(const Cx<T>& a) { return {a.re, -a.im}; }

template <class T>
T norm2(const Cx<T>& a) { return a.re * a.re + a.im * a.im; }

template <class T>
T cabs(const Cx<T>& a) {
  using std::abs;
  using std::sqrt;
  T x = abs(a.re), y = abs(a.im);
  T m = x > y ? x : y;
  if (m == T(0.0)) return T(0.0);
  T u = x / m, v = y / m;
  return m * sqrt(u * u + v * v);
}

// Magnitude in double; cheap enough for step control and comparisons.
template <class T>
double mag(const Cx<T>& a) {
  return std::hypot(to_double(a.re), to_double(a.im));
}

template <class T>
Cx<T> expi(const T& theta) {
  T s, c;
  sincos(theta, s, c);
  return {c, s};
}

template <class T>
Cx<T> imul(const Cx<T>& a) { return {-a.im, a.re}; }  // i*a

}  // namespace hillgap
