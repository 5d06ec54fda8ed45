#include "hillgap/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hillgap {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero(std::initializer_list<cplx> cs) {
  for (cplx c : cs)
    if (c == 0.0) throw PreconditionError("coefficients must be nonzero");
}

double log_factorial(int n) { return n <= 1 ? 0.0 : std::lgamma(n + 1.0); }

LogComplex lc(cplx z) { return LogComplex::from(z); }

bool near_integer_of_parity(cplx x, bool odd) {
  if (std::abs(x.imag()) > 1e-12) return false;
  const double r = std::round(x.real());
  if (std::abs(x.real() - r) > 1e-12) return false;
  const bool is_odd = std::abs(std::fmod(r, 2.0)) == 1.0;
  return is_odd == odd;
}

// 4 c^2 (z / (4 c^2))^p / ((p-1)!)^2
LogComplex two_exp_beta(cplx z, double c, int p) {
  const double q = 4.0 * c * c;
  return (lc(z) / LogComplex::real(q)).pow(p).scaled(std::log(q) - 2.0 * log_factorial(p - 1));
}

}  // namespace

// ---- construction -----------------------------------------------------------

TwoExpHill make_two_exp(cplx a, cplx b) {
  require_nonzero({a, b});
  return {a, b};
}

GenTwoExp make_gen_two_exp(cplx a, cplx b, int R, int S) {
  require_nonzero({a, b});
  if (R < 1 || S < 1) throw PreconditionError("R and S must be positive integers");
  if (R == S) throw PreconditionError("R and S must differ");
  const int d = std::gcd(R, S);
  return {a, b, R, S, d, R / d, S / d};
}

SExp make_s_exp(cplx a, cplx b, int s) {
  require_nonzero({a, b});
  if (s <= 2) throw PreconditionError("s must exceed 2");
  return {a, b, s};
}

FourTerm make_four_term(cplx a, cplx b, cplx A, cplx B) {
  require_nonzero({a, b, A, B});
  FourTerm f{a, b, A, B, {}, {}, {}, {}};
  f.alpha = std::sqrt(-A);
  f.beta = std::sqrt(-B);
  f.tau = -a / (2.0 * f.alpha);
  f.sigma = -b / (2.0 * f.beta);
  return f;
}

DiracTwoExp make_dirac_two_exp(cplx a, cplx A, cplx b, cplx B) {
  require_nonzero({a, A, b, B});
  return {a, A, b, B};
}

SmoothJump make_smooth_jump(int m, cplx jump, int K) {
  if (m < 0 || m > 2) throw PreconditionError("smooth-jump order m must be 0, 1 or 2");
  if (K < 4) throw PreconditionError("smooth-jump truncation K must be at least 4");
  return {m, jump, K};
}

std::string family_name(const FamilySpec& f) {
  struct V {
    std::string operator()(const TwoExpHill&) const { return "two-exp"; }
    std::string operator()(const GenTwoExp&) const { return "gen-two-exp"; }
    std::string operator()(const SExp&) const { return "s-exp"; }
    std::string operator()(const FourTerm&) const { return "four-term"; }
    std::string operator()(const DiracTwoExp&) const { return "dirac-two-exp"; }
    std::string operator()(const SmoothJump&) const { return "smooth-jump"; }
  };
  return std::visit(V{}, f);
}

OperatorKind family_kind(const FamilySpec& f) {
  return std::holds_alternative<DiracTwoExp>(f) ? OperatorKind::Dirac : OperatorKind::Hill;
}

HillPotential smooth_jump_potential(int m, cplx jump, int K) {
  if (m < 0 || m > 2) throw PreconditionError("smooth-jump order m must be 0, 1 or 2");
  if (K < 4) throw PreconditionError("smooth-jump truncation K must be at least 4");
  HillPotential v;
  if (jump == 0.0) return v;
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    v.coeffs[k] = jump / kPi / std::pow(cplx(0.0, 2.0 * k), m + 1);
  }
  return v;
}

Potential potential_of(const FamilySpec& f) {
  struct V {
    Potential operator()(const TwoExpHill& p) const { return HillPotential{{{-1, p.a}, {1, p.b}}}; }
    Potential operator()(const GenTwoExp& p) const {
      return HillPotential{{{-p.R, p.a}, {p.S, p.b}}};
    }
    Potential operator()(const SExp& p) const { return HillPotential{{{-1, p.a}, {p.s, p.b}}}; }
    Potential operator()(const FourTerm& p) const {
      return HillPotential{{{-2, p.A}, {-1, p.a}, {1, p.b}, {2, p.B}}};
    }
    Potential operator()(const DiracTwoExp& p) const {
      return DiracPotential{{{-1, p.a}, {1, p.A}}, {{-1, p.b}, {1, p.B}}};
    }
    Potential operator()(const SmoothJump& p) const {
      return smooth_jump_potential(p.m, p.jump, p.K);
    }
  };
  return std::visit(V{}, f);
}

bool admissible(const FamilySpec& f, int n, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (const auto* g = std::get_if<GenTwoExp>(&f)) {
    const int step = g->r * g->s * g->d;
    if (n < 1 || n % step != 0)
      return fail("n must be a positive multiple of r*s*d = " + std::to_string(step));
    return true;
  }
  if (const auto* s = std::get_if<SExp>(&f)) {
    if (n < 1 || (n + 1) % s->s != 0)
      return fail("n must have the form s*m - 1 with s = " + std::to_string(s->s));
    return true;
  }
  if (std::holds_alternative<DiracTwoExp>(f)) {
    if (n == 0) return fail("n must be nonzero");
    return true;
  }
  if (const auto* j = std::get_if<SmoothJump>(&f)) {
    if (n < 1 || n > j->K) return fail("n must lie in 1..K = " + std::to_string(j->K));
    return true;
  }
  if (n < 1) return fail("n must be positive");
  return true;
}

// ---- branch resolution ----------------------------------------------------

BranchChoice resolve_branch(const LogComplex& b_minus, const LogComplex& b_plus) {
  BranchChoice out;
  out.sqrt_minus = b_minus.principal_sqrt();
  out.sqrt_plus = b_plus.principal_sqrt();
  if (b_minus.is_zero() || b_plus.is_zero()) return out;
  const double phase = wrap_phase(out.sqrt_minus.phase() + out.sqrt_plus.phase());
  const double re = std::cos(phase), im = std::sin(phase);
  if (std::abs(re) <= 1e-12) {
    out.resolved = false;
    if (im < 0) out.sqrt_minus = -out.sqrt_minus;
  } else if (re < 0) {
    out.sqrt_minus = -out.sqrt_minus;
  }
  return out;
}

BranchChoice resolve_branch(cplx b_minus, cplx b_plus) {
  return resolve_branch(LogComplex::from(b_minus), LogComplex::from(b_plus));
}

// ---- proxies ----------------------------------------------------------------

double log_double_factorial(int n) {
  double s = 0.0;
  for (int k = n; k > 1; k -= 2) s += std::log(double(k));
  return s;
}

double log_sexp_gamma_ratio(int s, int m) {
  const double is = 1.0 / s;
  return 2.0 * std::lgamma(1.0 - is) + std::lgamma(m - 2.0 * is) - 2.0 * std::lgamma(m - is) -
         std::lgamma(1.0 - 2.0 * is);
}

BetaProxy beta_proxy(const FamilySpec& f, int n) {
  std::string why;
  if (!admissible(f, n, &why)) throw PreconditionError(family_name(f) + ": " + why);
  BetaProxy bp;
  bp.n = n;

  if (const auto* p = std::get_if<TwoExpHill>(&f)) {
    bp.b_plus = two_exp_beta(p->b, 1.0, n);
    bp.b_minus = two_exp_beta(p->a, 1.0, n);
  } else if (const auto* p = std::get_if<GenTwoExp>(&f)) {
    const int m = n / (p->r * p->s * p->d);
    bp.b_plus = two_exp_beta(p->b, double(p->s) * p->d, p->r * m);
    bp.b_minus = two_exp_beta(p->a, double(p->r) * p->d, p->s * m);
  } else if (const auto* p = std::get_if<SExp>(&f)) {
    const int s = p->s, m = (n + 1) / s;
    // -2 s a b^m / ((2s)^{2m} m!) times the Gamma ratio.
    bp.b_plus = (lc(-2.0 * s * p->a) * lc(p->b).pow(m))
                    .scaled(-2.0 * m * std::log(2.0 * s) - log_factorial(m) + log_sexp_gamma_ratio(s, m));
    // a^n / (4^{n-1} ((n-1)!)^2)
    bp.b_minus = lc(p->a).pow(n).scaled(-(n - 1) * std::log(4.0) - 2.0 * log_factorial(n - 1));
  } else if (const auto* p = std::get_if<FourTerm>(&f)) {
    const double ldf = -2.0 * log_double_factorial(n - 2);
    const cplx ib2 = cplx(0.0, 1.0) * p->beta / 2.0, ia2 = cplx(0.0, 1.0) * p->alpha / 2.0;
    if (n % 2 == 0) {
      bp.b_plus = (lc(ib2).pow(n) * lc(4.0 * std::cos(kPi * p->sigma / 2.0))).scaled(ldf);
      bp.b_minus = (lc(ia2).pow(n) * lc(4.0 * std::cos(kPi * p->tau / 2.0))).scaled(ldf);
    } else {
      const cplx c = cplx(0.0, 4.0) * (2.0 / kPi);
      bp.b_plus = (lc(ib2).pow(n) * lc(c * std::sin(kPi * p->sigma / 2.0))).scaled(ldf);
      bp.b_minus = (lc(ia2).pow(n) * lc(c * std::sin(kPi * p->tau / 2.0))).scaled(ldf);
    }
  } else if (const auto* p = std::get_if<DiracTwoExp>(&f)) {
    if (n % 2 == 0) {
      bp.b_plus = LogComplex::zero();
      bp.b_minus = LogComplex::zero();
    } else {
      const int m = (std::abs(n) - 1) / 2;
      const double den = -2.0 * m * std::log(4.0) - 2.0 * log_factorial(m);
      if (n > 0) {
        bp.b_plus = (lc(p->A).pow(m) * lc(p->B).pow(m + 1)).scaled(den);
        bp.b_minus = (lc(p->a).pow(m + 1) * lc(p->b).pow(m)).scaled(den);
      } else {
        bp.b_plus = (lc(p->a).pow(m) * lc(p->b).pow(m + 1)).scaled(den);
        bp.b_minus = (lc(p->A).pow(m + 1) * lc(p->B).pow(m)).scaled(den);
      }
    }
  } else if (const auto* p = std::get_if<SmoothJump>(&f)) {
    const LogComplex base = lc(p->jump / kPi);
    bp.b_plus = base / lc(cplx(0.0, 2.0 * n)).pow(p->m + 1);
    bp.b_minus = base / lc(cplx(0.0, -2.0 * n)).pow(p->m + 1);
  }

  const BranchChoice br = resolve_branch(bp.b_minus, bp.b_plus);
  bp.sqrt_minus = br.sqrt_minus;
  bp.sqrt_plus = br.sqrt_plus;
  bp.resolved = br.resolved;
  return bp;
}

// ---- predictions -------------------------------------------------------------

PredictionRecord predict_from_proxy(OperatorKind kind, const BetaProxy& beta) {
  PredictionRecord rec;
  rec.n = beta.n;
  rec.kind = kind;
  rec.beta = beta;
  rec.sign_resolved = beta.resolved;
  rec.gap_log = (beta.sqrt_minus * beta.sqrt_plus).scaled(std::log(2.0));
  rec.gap_pred = rec.gap_log.value();

  const cplx sm = beta.sqrt_minus.value(), sp = beta.sqrt_plus.value();
  const cplx bm = beta.minus(), bpl = beta.plus();
  // Ratios taken in log space so that tiny proxies compare correctly.
  auto ratio_near = [](const LogComplex& num, const LogComplex& den, double target) {
    if (num.is_zero() || den.is_zero()) return false;
    return std::abs((num / den).value() - target) <= kClusterGuard;
  };
  const bool root_ratio_m1 = ratio_near(beta.sqrt_minus, beta.sqrt_plus, -1.0);
  const bool root_ratio_p1 = ratio_near(beta.sqrt_minus, beta.sqrt_plus, 1.0);
  const bool ratio_m1 = ratio_near(beta.b_minus, beta.b_plus, -1.0);

  const double sgn = kind == OperatorKind::Hill ? -0.5 : 0.5;
  const cplx sum2 = sgn * (sp + sm) * (sp + sm);
  const cplx diff2 = sgn * (sp - sm) * (sp - sm);
  std::ostringstream note;
  if (kind == OperatorKind::Hill) {
    if (!root_ratio_m1) rec.dev_plus_pred = sum2;
    else note << "dev_plus guarded (root ratio -1); ";
    if (!root_ratio_p1) rec.dev_minus_pred = diff2;
    else note << "dev_minus guarded (root ratio +1); ";
  } else {
    if (!root_ratio_m1) rec.dev_minus_pred = sum2;
    else note << "dev_minus guarded (root ratio -1); ";
    if (!root_ratio_p1) rec.dev_plus_pred = diff2;
    else note << "dev_plus guarded (root ratio +1); ";
  }
  if (!ratio_m1) rec.midpoint_pred = sgn * (bpl + bm);
  else note << "midpoint guarded (ratio -1); ";
  rec.note = note.str();
  return rec;
}

PredictionRecord predict(const FamilySpec& f, int n) {
  const BetaProxy bp = beta_proxy(f, n);
  PredictionRecord rec = predict_from_proxy(family_kind(f), bp);
  if (const auto* p = std::get_if<FourTerm>(&f)) {
    const bool odd_n = n % 2 != 0;
    // Even n needs tau, sigma off the odd integers; odd n off the even ones.
    if (near_integer_of_parity(p->tau, !odd_n) || near_integer_of_parity(p->sigma, !odd_n)) {
      rec.applicable = false;
      rec.note += odd_n ? "tau or sigma is an even integer; " : "tau or sigma is an odd integer; ";
    }
  }
  return rec;
}

SignedValue predict_mathieu_refined(cplx a, cplx b, int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  const cplx ab = a * b;
  if (ab == 0.0) return {0.0, false};
  const LogComplex lead =
      (LogComplex::from(std::sqrt(ab)) / LogComplex::real(4.0)).pow(n).scaled(std::log(8.0) - 2.0 * log_factorial(n - 1));
  return {lead.value() * (1.0 - ab / (4.0 * std::pow(double(n), 3))), false};
}

SignedValue predict_mathieu_refined(cplx a, int n) { return predict_mathieu_refined(a, a, n); }

double predict_levy_keller(cplx a, int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (a == 0.0) return 0.0;
  return std::exp(std::log(8.0) + n * std::log(std::abs(a) / 4.0) - 2.0 * log_factorial(n - 1));
}

}  // namespace hillgap
