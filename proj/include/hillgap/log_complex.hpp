#pragma once

#include <complex>
#include <limits>

namespace hillgap {

// Complex number held as (log|z|, arg z), arg in (-pi, pi]. Products and
// powers of factorially small quantities stay representable far below
// double underflow; value() exponentiates on demand.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double log_mag, double phase);

  static LogComplex zero() { return {}; }
  static LogComplex from(std::complex<double> z);
  static LogComplex real(double x) { return from({x, 0.0}); }

  bool is_zero() const { return log_mag_ == -std::numeric_limits<double>::infinity(); }
  double log_abs() const { return log_mag_; }
  double phase() const { return phase_; }
  double abs() const;
  std::complex<double> value() const;

  LogComplex operator*(const LogComplex& b) const;
  LogComplex operator/(const LogComplex& b) const;
  LogComplex operator-() const;
  LogComplex pow(int k) const;
  LogComplex principal_sqrt() const;
  LogComplex scaled(double log_factor) const { return {log_mag_ + log_factor, phase_}; }

  friend LogComplex operator+(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

double wrap_phase(double phi);

}  // namespace hillgap
