#include "hillgap/dd.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace hillgap {

dd_real dd_real::pi() { return {3.141592653589793116e+00, 1.224646799147353207e-16}; }
dd_real dd_real::half_pi() { return {1.570796326794896558e+00, 6.123233995736766036e-17}; }
dd_real dd_real::two_pi() { return {6.283185307179586232e+00, 2.449293598294706414e-16}; }

dd_real sqrt(const dd_real& a) {
  if (a.hi == 0.0) return {0.0};
  if (a.hi < 0.0) return {std::nan(""), 0.0};
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  dd_real ax_dd(ax);
  dd_real diff = a - ax_dd * ax_dd;
  return ax_dd + dd_real(diff.hi * (x * 0.5));
}

dd_real nint(const dd_real& a) {
  double hi = std::nearbyint(a.hi);
  double lo;
  if (hi == a.hi) {
    lo = std::nearbyint(a.lo);
    hi = ddx::quick_two_sum(hi, lo, lo);
  } else {
    lo = 0.0;
    if (std::fabs(hi - a.hi) == 0.5 && a.lo < 0.0) hi -= 1.0;
  }
  return {hi, lo};
}

dd_real ldexp(const dd_real& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

namespace {

// Taylor series on |r| <= pi/4; converges in ~14 terms at 1e-33.
void sincos_reduced(const dd_real& r, dd_real& s, dd_real& c) {
  const dd_real r2 = r * r;
  const double stop = 1e-34;

  dd_real term = r;
  s = r;
  for (int k = 1; k < 40; ++k) {
    term = term * r2 / dd_real(double(2 * k) * double(2 * k + 1));
    term = -term;
    s += term;
    if (std::fabs(term.hi) < stop) break;
  }

  term = dd_real(1.0);
  c = dd_real(1.0);
  for (int k = 1; k < 40; ++k) {
    term = term * r2 / dd_real(double(2 * k - 1) * double(2 * k));
    term = -term;
    c += term;
    if (std::fabs(term.hi) < stop) break;
  }
}

dd_real pow10_dd(int k) {
  dd_real result(1.0);
  dd_real base(10.0);
  int e = std::abs(k);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return k < 0 ? dd_real(1.0) / result : result;
}

}  // namespace

void sincos(const dd_real& a, dd_real& s, dd_real& c) {
  if (a.hi == 0.0 && a.lo == 0.0) {
    s = dd_real(0.0);
    c = dd_real(1.0);
    return;
  }
  const dd_real z = nint(a / dd_real::half_pi());
  const dd_real r = a - dd_real::half_pi() * z;
  double q = std::fmod(z.hi, 4.0);
  if (q < 0) q += 4.0;
  const int j = static_cast<int>(q);

  dd_real sr, cr;
  sincos_reduced(r, sr, cr);
  switch (j) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

std::string to_string(const dd_real& a, int digits) {
  if (std::isnan(a.hi)) return "nan";
  if (std::isinf(a.hi)) return a.hi > 0 ? "inf" : "-inf";
  if (a.hi == 0.0) return "0";
  if (digits < 1) digits = 1;

  std::string out;
  dd_real r = abs(a);
  if (a.hi < 0) out.push_back('-');

  int e = static_cast<int>(std::floor(std::log10(r.hi)));
  r = r / pow10_dd(e);
  if (r.hi >= 10.0) {
    r = r / dd_real(10.0);
    ++e;
  } else if (r.hi < 1.0) {
    r = r * 10.0;
    --e;
  }

  std::string mant;
  for (int i = 0; i < digits + 1; ++i) {
    int d = static_cast<int>(std::floor(r.hi));
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    mant.push_back(static_cast<char>('0' + d));
    r = (r - dd_real(double(d))) * 10.0;
  }
  // Round on the guard digit, propagating carries.
  bool carry = mant.back() >= '5';
  mant.pop_back();
  for (int i = static_cast<int>(mant.size()) - 1; i >= 0 && carry; --i) {
    if (mant[i] == '9') {
      mant[i] = '0';
    } else {
      ++mant[i];
      carry = false;
    }
  }
  if (carry) {
    mant.insert(mant.begin(), '1');
    mant.pop_back();
    ++e;
  }

  out.push_back(mant[0]);
  if (mant.size() > 1) {
    out.push_back('.');
    out.append(mant, 1, std::string::npos);
  }
  out += "e";
  out += std::to_string(e);
  return out;
}

dd_real dd_from_string(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';

  dd_real r(0.0);
  int frac = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      r = r * 10.0 + dd_real(double(ch - '0'));
      if (seen_point) ++frac;
      seen_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("dd_from_string: no digits in '" + s + "'");
  int exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    exp10 = std::stoi(s.substr(i + 1));
  }
  r = r * pow10_dd(exp10 - frac);
  return neg ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const dd_real& a) { return os << to_string(a); }

}  // namespace hillgap
