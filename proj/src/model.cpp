#include "hillgap/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hillgap {

// ---- LogComplex -------------------------------------------------------

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

LogComplex::LogComplex(double log_mag, double phase) : log_mag_(log_mag), phase_(wrap_phase(phase)) {
  if (std::isinf(log_mag_) && log_mag_ < 0) phase_ = 0.0;
}

LogComplex LogComplex::from(std::complex<double> z) {
  if (z == 0.0) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

double LogComplex::abs() const { return std::exp(log_mag_); }

std::complex<double> LogComplex::value() const {
  if (is_zero()) return 0.0;
  return std::polar(std::exp(log_mag_), phase_);
}

LogComplex LogComplex::operator*(const LogComplex& b) const {
  if (is_zero() || b.is_zero()) return zero();
  return {log_mag_ + b.log_mag_, phase_ + b.phase_};
}

LogComplex LogComplex::operator/(const LogComplex& b) const {
  if (b.is_zero()) return {std::numeric_limits<double>::infinity(), 0.0};
  if (is_zero()) return zero();
  return {log_mag_ - b.log_mag_, phase_ - b.phase_};
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return zero();
  return {log_mag_, phase_ + std::numbers::pi};
}

LogComplex LogComplex::pow(int k) const {
  if (k == 0) return {0.0, 0.0};
  if (is_zero()) return zero();
  return {k * log_mag_, k * phase_};
}

LogComplex LogComplex::principal_sqrt() const {
  if (is_zero()) return zero();
  return {0.5 * log_mag_, 0.5 * phase_};
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  double m = std::max(a.log_mag_, b.log_mag_);
  std::complex<double> s = std::polar(std::exp(a.log_mag_ - m), a.phase_) +
                           std::polar(std::exp(b.log_mag_ - m), b.phase_);
  if (s == 0.0) return LogComplex::zero();
  return {std::log(std::abs(s)) + m, std::arg(s)};
}

// ---- potentials ---------------------------------------------------------

namespace {

int max_abs_key(const std::map<int, cplx>& m) {
  int r = 0;
  for (const auto& [k, c] : m)
    if (c != 0.0) r = std::max(r, std::abs(k));
  return r;
}

double l1(const std::map<int, cplx>& m) {
  double s = 0;
  for (const auto& [k, c] : m) s += std::abs(c);
  return s;
}

cplx lookup(const std::map<int, cplx>& m, int k) {
  auto it = m.find(k);
  return it == m.end() ? cplx(0.0) : it->second;
}

std::map<int, cplx> shifted(const std::map<int, cplx>& m, cplx zeta) {
  std::map<int, cplx> out;
  for (const auto& [k, c] : m) out[k] = c * std::exp(cplx(0.0, 2.0 * k) * zeta);
  return out;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); }

}  // namespace

int HillPotential::max_exponent() const { return max_abs_key(coeffs); }
double HillPotential::l1_norm() const { return l1(coeffs); }
cplx HillPotential::coeff(int k) const { return lookup(coeffs, k); }

bool HillPotential::self_adjoint(double tol) const {
  for (const auto& [k, c] : coeffs)
    if (!close(coeff(-k), std::conj(c), tol)) return false;
  return true;
}

cplx HillPotential::value(cplx x) const {
  cplx s = 0.0;
  for (const auto& [k, c] : coeffs) s += c * std::exp(cplx(0.0, 2.0 * k) * x);
  return s;
}

int DiracPotential::max_exponent() const { return std::max(max_abs_key(p), max_abs_key(q)); }
double DiracPotential::l1_norm() const { return std::max(l1(p), l1(q)); }
cplx DiracPotential::p_coeff(int k) const { return lookup(p, k); }
cplx DiracPotential::q_coeff(int k) const { return lookup(q, k); }

bool DiracPotential::self_adjoint(double tol) const {
  for (const auto& [k, c] : q)
    if (!close(c, std::conj(p_coeff(-k)), tol)) return false;
  for (const auto& [k, c] : p)
    if (!close(q_coeff(-k), std::conj(c), tol)) return false;
  return true;
}

OperatorKind kind_of(const Potential& v) {
  return std::holds_alternative<HillPotential>(v) ? OperatorKind::Hill : OperatorKind::Dirac;
}

int max_exponent(const Potential& v) {
  return std::visit([](const auto& p) { return p.max_exponent(); }, v);
}

bool is_self_adjoint(const Potential& v, double tol) {
  return std::visit([tol](const auto& p) { return p.self_adjoint(tol); }, v);
}

HillPotential shift_potential(const HillPotential& v, cplx zeta) { return {shifted(v.coeffs, zeta)}; }

DiracPotential shift_potential(const DiracPotential& v, cplx zeta) {
  return {shifted(v.p, zeta), shifted(v.q, zeta)};
}

Potential shift_potential(const Potential& v, cplx zeta) {
  return std::visit([zeta](const auto& p) -> Potential { return shift_potential(p, zeta); }, v);
}

// ---- boundary conditions ------------------------------------------------

BoundaryCondition BoundaryCondition::quasi(double t) {
  if (!(t > -std::numbers::pi && t <= std::numbers::pi + 1e-15))
    throw PreconditionError("quasi-periodic parameter t must lie in (-pi, pi]");
  return {Type::Quasi, t};
}

BoundaryCondition BoundaryCondition::parse(const std::string& s) {
  if (s == "per+" || s == "periodic") return per_plus();
  if (s == "per-" || s == "antiperiodic") return per_minus();
  if (s == "dir" || s == "dirichlet") return dirichlet();
  if (s == "neu" || s == "neumann") return neumann();
  if (s.rfind("quasi:", 0) == 0) {
    std::size_t used = 0;
    double t = 0;
    try {
      t = std::stod(s.substr(6), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() - 6)
      throw PreconditionError("bad quasi-periodic parameter in '" + s + "'");
    return quasi(t);
  }
  throw PreconditionError("unknown boundary condition '" + s + "' (per+|per-|dir|neu|quasi:<t>)");
}

std::optional<double> BoundaryCondition::floquet_angle() const {
  switch (type) {
    case Type::PerPlus: return 0.0;
    case Type::PerMinus: return std::numbers::pi;
    case Type::Quasi: return t;
    default: return std::nullopt;
  }
}

std::string BoundaryCondition::name() const {
  switch (type) {
    case Type::PerPlus: return "per+";
    case Type::PerMinus: return "per-";
    case Type::Dirichlet: return "dir";
    case Type::Neumann: return "neu";
    case Type::Quasi: {
      std::ostringstream os;
      os.precision(17);
      os << "quasi:" << t;
      return os.str();
    }
  }
  return "?";
}

BoundaryCondition parity_bc(int n) {
  return (n % 2 == 0) ? BoundaryCondition::per_plus() : BoundaryCondition::per_minus();
}

// ---- labeling -------------------------------------------------------------

namespace {
bool plus_first(cplx a, cplx b) {
  // true when a should be lambda_plus relative to b
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}
}  // namespace

std::pair<cplx, cplx> label_pair(cplx e1, cplx e2) {
  if (plus_first(e1, e2)) return {e2, e1};
  return {e1, e2};
}

std::pair<Eigenvalue, Eigenvalue> label_pair(const Eigenvalue& e1, const Eigenvalue& e2) {
  // Offsets share a center and carry more digits than the values.
  if (plus_first(e1.offset, e2.offset)) return {e2, e1};
  return {e1, e2};
}

// ---- localization ---------------------------------------------------------

cplx reference_point(OperatorKind kind, int n) {
  return kind == OperatorKind::Hill ? cplx(double(n) * n, 0.0) : cplx(double(n), 0.0);
}

double lemma_radius(OperatorKind kind, int n) {
  return kind == OperatorKind::Hill ? std::abs(n) / 4.0 : 0.5;
}

std::vector<cplx> free_eigenvalues(OperatorKind kind, const BoundaryCondition& bc, cplx center,
                                   double radius) {
  std::vector<cplx> out;
  auto keep = [&](double lam) {
    if (in_disc(cplx(lam, 0.0), center, radius)) out.emplace_back(lam, 0.0);
  };
  const double reach = std::abs(center) + radius;

  if (kind == OperatorKind::Hill) {
    const int kmax = static_cast<int>(std::ceil(std::sqrt(reach))) + 3;
    if (auto t = bc.floquet_angle()) {
      const double tau = std::abs(*t) / std::numbers::pi;
      for (int k = -kmax; k <= kmax; ++k) {
        double w = 2.0 * k + tau;
        keep(w * w);
      }
    } else {
      const int k0 = bc.type == BoundaryCondition::Type::Dirichlet ? 1 : 0;
      for (int k = k0; k <= 2 * kmax; ++k) keep(double(k) * k);
    }
  } else {
    const int kmax = static_cast<int>(std::ceil(reach)) + 3;
    if (auto t = bc.floquet_angle()) {
      const double tau = *t / std::numbers::pi;
      for (int k = -kmax; k <= kmax; ++k) {
        keep(2.0 * k - tau);
        keep(2.0 * k + tau);
      }
    } else if (bc.type == BoundaryCondition::Type::Dirichlet) {
      for (int k = -2 * kmax; k <= 2 * kmax; ++k) keep(double(k));
    } else {
      throw PreconditionError("Neumann conditions are defined for the Hill operator only");
    }
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return out;
}

std::vector<LocalizationDisc> localization_ladder(OperatorKind kind, const BoundaryCondition& bc,
                                                  cplx center, double first_radius) {
  std::vector<LocalizationDisc> ladder;
  if (first_radius > 0) {
    ladder.push_back({center, first_radius,
                      static_cast<int>(free_eigenvalues(kind, bc, center, first_radius).size())});
  }
  const double search =
      kind == OperatorKind::Hill ? 4.0 * std::sqrt(std::abs(center)) + 8.0 : 4.0;
  double nearest = std::numeric_limits<double>::infinity();
  const double same = 1e-9 * (1.0 + std::abs(center));
  for (cplx f : free_eigenvalues(kind, bc, center, search)) {
    double d = std::abs(f - center);
    if (d > same) nearest = std::min(nearest, d);
  }
  if (std::isfinite(nearest)) {
    double r2 = 0.5 * nearest * (1.0 - 1e-6);
    if (r2 > first_radius * (1.0 + 1e-6)) {
      ladder.push_back({center, r2, static_cast<int>(free_eigenvalues(kind, bc, center, r2).size())});
    }
  }
  return ladder;
}

}  // namespace hillgap
