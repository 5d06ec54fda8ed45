#pragma once

#include <cmath>
#include <iosfwd>
#include <string>

namespace hillgap {

// Unevaluated sum hi + lo, |lo| <= ulp(hi)/2; about 31 significant digits.
// Algorithms follow Dekker/Knuth error-free transformations.
struct dd_real {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd_real() = default;
  constexpr dd_real(double h) : hi(h), lo(0.0) {}  // NOLINT(implicit)
  constexpr dd_real(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }

  dd_real& operator+=(const dd_real& b);
  dd_real& operator-=(const dd_real& b);
  dd_real& operator*=(const dd_real& b);
  dd_real& operator/=(const dd_real& b);

  static dd_real pi();
  static dd_real half_pi();
  static dd_real two_pi();
  static constexpr double epsilon() { return 4.93038065763132e-32; }  // 2^-104
};

namespace ddx {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

}  // namespace ddx

inline dd_real operator-(const dd_real& a) { return {-a.hi, -a.lo}; }

inline dd_real operator+(const dd_real& a, const dd_real& b) {
  double s2, t2;
  double s1 = ddx::two_sum(a.hi, b.hi, s2);
  double t1 = ddx::two_sum(a.lo, b.lo, t2);
  s2 += t1;
  s1 = ddx::quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = ddx::quick_two_sum(s1, s2, s2);
  return {s1, s2};
}

inline dd_real operator-(const dd_real& a, const dd_real& b) { return a + (-b); }

inline dd_real operator*(const dd_real& a, const dd_real& b) {
  double p2;
  double p1 = ddx::two_prod(a.hi, b.hi, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  p1 = ddx::quick_two_sum(p1, p2, p2);
  return {p1, p2};
}

inline dd_real operator*(const dd_real& a, double b) {
  double p2;
  double p1 = ddx::two_prod(a.hi, b, p2);
  p2 += a.lo * b;
  p1 = ddx::quick_two_sum(p1, p2, p2);
  return {p1, p2};
}

inline dd_real operator*(double a, const dd_real& b) { return b * a; }

inline dd_real operator/(const dd_real& a, const dd_real& b) {
  double q1 = a.hi / b.hi;
  dd_real r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  q1 = ddx::quick_two_sum(q1, q2, q2);
  return dd_real(q1, q2) + dd_real(q3);
}

inline dd_real& dd_real::operator+=(const dd_real& b) { return *this = *this + b; }
inline dd_real& dd_real::operator-=(const dd_real& b) { return *this = *this - b; }
inline dd_real& dd_real::operator*=(const dd_real& b) { return *this = *this * b; }
inline dd_real& dd_real::operator/=(const dd_real& b) { return *this = *this / b; }

inline bool operator==(const dd_real& a, const dd_real& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd_real& a, const dd_real& b) { return !(a == b); }
inline bool operator<(const dd_real& a, const dd_real& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd_real& a, const dd_real& b) { return b < a; }
inline bool operator<=(const dd_real& a, const dd_real& b) { return !(b < a); }
inline bool operator>=(const dd_real& a, const dd_real& b) { return !(a < b); }

inline dd_real abs(const dd_real& a) { return a.hi < 0.0 ? -a : a; }
inline double to_double(const dd_real& a) { return a.hi + a.lo; }
inline double to_double(double a) { return a; }

dd_real sqrt(const dd_real& a);
dd_real nint(const dd_real& a);
dd_real ldexp(const dd_real& a, int e);
void sincos(const dd_real& a, dd_real& s, dd_real& c);

// Decimal rendering with `digits` significant digits (used by tests and logs).
std::string to_string(const dd_real& a, int digits = 32);
dd_real dd_from_string(const std::string& s);
std::ostream& operator<<(std::ostream& os, const dd_real& a);

inline void sincos(double a, double& s, double& c) {
  s = std::sin(a);
  c = std::cos(a);
}

template <class T>
struct real_traits;

template <>
struct real_traits<double> {
  static double pi() { return 3.141592653589793; }
  static constexpr double epsilon() { return 2.220446049250313e-16; }
};

template <>
struct real_traits<dd_real> {
  static dd_real pi() { return dd_real::pi(); }
  static constexpr double epsilon() { return dd_real::epsilon(); }
};

}  // namespace hillgap
