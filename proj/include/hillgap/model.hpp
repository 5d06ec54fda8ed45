#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hillgap/log_complex.hpp"

namespace hillgap {

using cplx = std::complex<double>;

// Exit-code classes used by the CLI: precondition -> 1, the others -> 2.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OperatorKind { Hill, Dirac };

// v(x) = sum_k v_k e^{2ikx} on [0, pi].
struct HillPotential {
  std::map<int, cplx> coeffs;

  int max_exponent() const;
  bool self_adjoint(double tol = 1e-14) const;
  double l1_norm() const;
  cplx value(cplx x) const;
  cplx coeff(int k) const;
};

// Off-diagonal entries P (upper) and Q (lower) of the Dirac potential matrix.
struct DiracPotential {
  std::map<int, cplx> p;
  std::map<int, cplx> q;

  int max_exponent() const;
  bool self_adjoint(double tol = 1e-14) const;
  double l1_norm() const;
  cplx p_coeff(int k) const;
  cplx q_coeff(int k) const;
};

using Potential = std::variant<HillPotential, DiracPotential>;

OperatorKind kind_of(const Potential& v);
int max_exponent(const Potential& v);
bool is_self_adjoint(const Potential& v, double tol = 1e-14);

// v_k -> v_k e^{2ik zeta}, i.e. v(x) -> v(x + zeta).
HillPotential shift_potential(const HillPotential& v, cplx zeta);
DiracPotential shift_potential(const DiracPotential& v, cplx zeta);
Potential shift_potential(const Potential& v, cplx zeta);

struct BoundaryCondition {
  enum class Type { PerPlus, PerMinus, Dirichlet, Neumann, Quasi };
  Type type = Type::PerPlus;
  double t = 0.0;  // Quasi only, in (-pi, pi]

  static BoundaryCondition per_plus() { return {Type::PerPlus, 0.0}; }
  static BoundaryCondition per_minus() { return {Type::PerMinus, 0.0}; }
  static BoundaryCondition dirichlet() { return {Type::Dirichlet, 0.0}; }
  static BoundaryCondition neumann() { return {Type::Neumann, 0.0}; }
  static BoundaryCondition quasi(double t);
  static BoundaryCondition parse(const std::string& s);

  // Floquet multiplier rho = e^{it} for Per+/Per-/Quasi; nullopt otherwise.
  std::optional<double> floquet_angle() const;
  bool is_floquet() const { return floquet_angle().has_value(); }
  std::string name() const;
};

// Periodic (even n) or antiperiodic (odd n) condition for index n.
BoundaryCondition parity_bc(int n);

// An eigenvalue together with its offset from the localization center,
// the offset carried at the working precision of the backend that found it.
struct Eigenvalue {
  cplx value;
  cplx offset;
};

// (lambda_minus, lambda_plus): larger real part wins, ties by larger imaginary part.
std::pair<cplx, cplx> label_pair(cplx e1, cplx e2);
std::pair<Eigenvalue, Eigenvalue> label_pair(const Eigenvalue& e1, const Eigenvalue& e2);

struct SpectralTriangle {
  int n = 0;
  OperatorKind kind = OperatorKind::Hill;
  cplx lambda0;
  cplx lambda_minus, lambda_plus, mu;
  std::optional<cplx> nu;
  cplx gap;
  cplx deviation_plus;   // mu - lambda_plus
  cplx deviation_minus;  // mu - lambda_minus
  cplx midpoint_dev;
  cplx z_star;
  // Offsets from lambda0; derived fields are computed from these.
  cplx z_minus, z_plus, z_mu;
  std::optional<cplx> z_nu;
};

struct BetaProxy {
  int n = 0;
  LogComplex b_minus, b_plus;
  LogComplex sqrt_minus, sqrt_plus;
  bool resolved = true;

  cplx minus() const { return b_minus.value(); }
  cplx plus() const { return b_plus.value(); }
};

struct Diagnostics {
  int n = 0;
  std::optional<double> t_n;  // may be +inf
  std::optional<double> r_n;
};

// Localization: lambda0 = n^2 (Hill) or n (Dirac); Lemma radius n/4 or 1/2.
cplx reference_point(OperatorKind kind, int n);
double lemma_radius(OperatorKind kind, int n);

// Free-operator eigenvalues (with multiplicity) in the closed disc |lambda - c| <= r.
std::vector<cplx> free_eigenvalues(OperatorKind kind, const BoundaryCondition& bc, cplx center,
                                   double radius);

struct LocalizationDisc {
  cplx center;
  double radius = 0.0;
  int expected = 0;  // free-operator count inside
};

// Lemma disc first, then half the distance to the nearest other free
// eigenvalue of the same condition. Low indices need the second rung.
std::vector<LocalizationDisc> localization_ladder(OperatorKind kind, const BoundaryCondition& bc,
                                                  cplx center, double first_radius);

inline constexpr double kDiscSlack = 1e-9;

inline bool in_disc(cplx z, cplx center, double radius) {
  return std::abs(z - center) <= radius * (1.0 + kDiscSlack) + kDiscSlack;
}

}  // namespace hillgap
