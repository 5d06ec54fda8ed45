#pragma once

#include <optional>
#include <string>
#include <variant>

#include "hillgap/model.hpp"

namespace hillgap {

// v = a e^{-2ix} + b e^{2ix}
struct TwoExpHill {
  cplx a, b;
};

// v = a e^{-2Rix} + b e^{2Six}, R = d r, S = d s with gcd(r, s) = 1.
struct GenTwoExp {
  cplx a, b;
  int R = 1, S = 2;
  int d = 1, r = 1, s = 2;
};

// v = a e^{-2ix} + b e^{2six}, s > 2; indices n = s m - 1.
struct SExp {
  cplx a, b;
  int s = 3;
};

// v = a e^{-2ix} + b e^{2ix} + A e^{-4ix} + B e^{4ix}, with
// A = -alpha^2, a = -2 tau alpha, B = -beta^2, b = -2 sigma beta.
struct FourTerm {
  cplx a, b, A, B;
  cplx alpha, beta, tau, sigma;
};

// Dirac: P = a e^{-2ix} + A e^{2ix}, Q = b e^{-2ix} + B e^{2ix}.
struct DiracTwoExp {
  cplx a, A, b, B;
};

// Hill potential whose m-th derivative jumps by `jump` = v^(m)(0) - v^(m)(pi)
// at the period seam, truncated to |k| <= K.
struct SmoothJump {
  int m = 0;
  cplx jump;
  int K = 64;
};

using FamilySpec = std::variant<TwoExpHill, GenTwoExp, SExp, FourTerm, DiracTwoExp, SmoothJump>;

TwoExpHill make_two_exp(cplx a, cplx b);
GenTwoExp make_gen_two_exp(cplx a, cplx b, int R, int S);
SExp make_s_exp(cplx a, cplx b, int s);
FourTerm make_four_term(cplx a, cplx b, cplx A, cplx B);
DiracTwoExp make_dirac_two_exp(cplx a, cplx A, cplx b, cplx B);
SmoothJump make_smooth_jump(int m, cplx jump, int K);

std::string family_name(const FamilySpec& f);
OperatorKind family_kind(const FamilySpec& f);
Potential potential_of(const FamilySpec& f);

// Whether the closed forms cover index n; `why` receives the reason if not.
bool admissible(const FamilySpec& f, int n, std::string* why = nullptr);

struct BranchChoice {
  LogComplex sqrt_minus, sqrt_plus;
  bool resolved = true;
};

// Principal roots, with sqrt_minus negated when needed so that
// Re(sqrt_minus * sqrt_plus) > 0; a purely imaginary product takes Im > 0
// and is reported unresolved.
BranchChoice resolve_branch(const LogComplex& b_minus, const LogComplex& b_plus);
BranchChoice resolve_branch(cplx b_minus, cplx b_plus);

BetaProxy beta_proxy(const FamilySpec& f, int n);

struct PredictionRecord {
  int n = 0;
  OperatorKind kind = OperatorKind::Hill;
  BetaProxy beta;
  LogComplex gap_log;  // 2 sqrt(B-) sqrt(B+)
  cplx gap_pred;
  std::optional<cplx> dev_plus_pred;   // mu - lambda_plus
  std::optional<cplx> dev_minus_pred;  // mu - lambda_minus
  std::optional<cplx> midpoint_pred;
  bool sign_resolved = true;
  bool applicable = true;  // false when the family hypotheses fail at n
  std::string note;
};

inline constexpr double kClusterGuard = 1e-6;

// Gap, deviation and midpoint predictions from a proxy pair.
PredictionRecord predict_from_proxy(OperatorKind kind, const BetaProxy& beta);
PredictionRecord predict(const FamilySpec& f, int n);

struct SignedValue {
  cplx value;
  bool sign_resolved = false;  // the leading +- is left to the caller
};

// 8 (sqrt(ab)/4)^n / ((n-1)!)^2 (1 - ab/(4 n^3)).
SignedValue predict_mathieu_refined(cplx a, cplx b, int n);
SignedValue predict_mathieu_refined(cplx a, int n);

// 8 (|a|/4)^n / ((n-1)!)^2.
double predict_levy_keller(cplx a, int n);

HillPotential smooth_jump_potential(int m, cplx jump, int K);

// log((n)!!) with (n)!! = 1 for n <= 0.
double log_double_factorial(int n);

// Gamma^2(1-1/s) Gamma(m-2/s) / (Gamma^2(m-1/s) Gamma(1-2/s)), in log form.
double log_sexp_gamma_ratio(int s, int m);

}  // namespace hillgap
