#include "hillgap/galerkin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hillgap {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Family { Even, Odd, Sine, Cosine };

Family hill_family(const BoundaryCondition& bc) {
  using T = BoundaryCondition::Type;
  switch (bc.type) {
    case T::PerPlus: return Family::Even;
    case T::PerMinus: return Family::Odd;
    case T::Dirichlet: return Family::Sine;
    case T::Neumann: return Family::Cosine;
    case T::Quasi:
      if (bc.t == 0.0) return Family::Even;
      if (std::abs(std::abs(bc.t) - kPi) < 1e-15) return Family::Odd;
      break;
  }
  throw PreconditionError("Galerkin backend does not handle quasi-periodic conditions; use monodromy");
}

std::vector<int> parity_list(bool odd, int N) {
  std::vector<int> ks;
  for (int k = -2 * N - 1; k <= 2 * N + 1; ++k)
    if ((std::abs(k) % 2 == 1) == odd) ks.push_back(k);
  return ks;
}

// Integral of e^{iqx} over [0, pi] for integer q.
cplx E(int q) {
  if (q == 0) return kPi;
  if (q % 2 == 0) return 0.0;
  return cplx(0.0, 2.0 / q);
}

// Integral of e^{2imx} cos(px) over [0, pi].
cplx I(int m, int p) { return 0.5 * (E(2 * m + p) + E(2 * m - p)); }

void check_size(int N, int max_exp) {
  if (N < 1) throw PreconditionError("truncation size must be positive");
  if (N < max_exp) {
    std::ostringstream os;
    os << "truncation N=" << N << " is smaller than the potential's largest exponent " << max_exp;
    throw PreconditionError(os.str());
  }
}

// Parlett-Reinsch balancing with powers of two (exact similarity).
void balance(Matrix& A) {
  const Eigen::Index n = A.rows();
  const double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<int> hill_basis(const BoundaryCondition& bc, int N) {
  switch (hill_family(bc)) {
    case Family::Even: return parity_list(false, N);
    case Family::Odd: return parity_list(true, N);
    case Family::Sine: {
      std::vector<int> ks(N);
      for (int k = 1; k <= N; ++k) ks[k - 1] = k;
      return ks;
    }
    case Family::Cosine: {
      std::vector<int> ks(N + 1);
      for (int k = 0; k <= N; ++k) ks[k] = k;
      return ks;
    }
  }
  return {};
}

std::vector<int> dirac_basis(const BoundaryCondition& bc, int N) {
  using T = BoundaryCondition::Type;
  if (bc.type == T::PerPlus || (bc.type == T::Quasi && bc.t == 0.0)) return parity_list(false, N);
  if (bc.type == T::PerMinus || (bc.type == T::Quasi && std::abs(std::abs(bc.t) - kPi) < 1e-15))
    return parity_list(true, N);
  throw PreconditionError("Galerkin Dirac backend handles Per+ and Per- only; use monodromy for " +
                          bc.name());
}

Matrix build_hill_matrix(const HillPotential& v, const BoundaryCondition& bc, int N) {
  const Family fam = hill_family(bc);
  check_size(N, v.max_exponent());
  const std::vector<int> ks = hill_basis(bc, N);
  const Eigen::Index dim = static_cast<Eigen::Index>(ks.size());
  Matrix M = Matrix::Zero(dim, dim);

  for (Eigen::Index i = 0; i < dim; ++i) {
    const int k = ks[i];
    M(i, i) += double(k) * k;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int l = ks[j];
      if (fam == Family::Even || fam == Family::Odd) {
        M(i, j) += v.coeff((k - l) / 2);
        continue;
      }
      cplx s = 0.0;
      if (fam == Family::Sine) {
        for (const auto& [m, c] : v.coeffs) s += c * (I(m, k - l) - I(m, k + l));
        M(i, j) += s / kPi;
      } else {
        for (const auto& [m, c] : v.coeffs) s += c * 0.5 * (I(m, k - l) + I(m, k + l));
        const double nk = k == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi);
        const double nl = l == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi);
        M(i, j) += s * nk * nl;
      }
    }
  }
  return M;
}

Matrix build_dirac_matrix(const DiracPotential& v, const BoundaryCondition& bc, int N) {
  const std::vector<int> ks = dirac_basis(bc, N);
  check_size(N, v.max_exponent());
  const Eigen::Index m = static_cast<Eigen::Index>(ks.size());
  Matrix M = Matrix::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int k = ks[i];
    M(i, i) = double(k);
    M(m + i, m + i) = double(k);
    for (Eigen::Index j = 0; j < m; ++j) {
      const int l = ks[j];
      M(i, m + j) = v.p_coeff(-(k + l) / 2);
      M(m + i, j) = v.q_coeff((k + l) / 2);
    }
  }
  return M;
}

Matrix build_matrix(const Potential& v, const BoundaryCondition& bc, int N) {
  if (const auto* h = std::get_if<HillPotential>(&v)) return build_hill_matrix(*h, bc, N);
  return build_dirac_matrix(std::get<DiracPotential>(v), bc, N);
}

std::vector<cplx> eig_all(const Matrix& M) {
  if (M.rows() != M.cols()) throw PreconditionError("eig_all: matrix must be square");
  if (M.rows() > 2048) throw PreconditionError("eig_all: matrix larger than 2048");
  if (M.rows() == 0) return {};
  Matrix A = M;
  balance(A);
  Eigen::ComplexEigenSolver<Matrix> solver;
  solver.compute(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "complex QR did not converge for a " << M.rows() << "x" << M.cols()
       << " matrix within " << 30 * M.rows() << " iterations";
    throw ConvergenceError(os.str());
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

TruncationPlan default_plan(OperatorKind kind, const BoundaryCondition& bc, int n_max) {
  const int base = std::max(32, 4 * std::abs(n_max));
  TruncationPlan plan;
  plan.tol = 1e-10;
  const bool sine_cosine = kind == OperatorKind::Hill &&
                           (bc.type == BoundaryCondition::Type::Dirichlet ||
                            bc.type == BoundaryCondition::Type::Neumann);
  // Sine/cosine expansions of e^{2imx}sin(lx) decay only algebraically, so
  // those bases get two extra doublings (computed only if needed).
  if (sine_cosine)
    plan.sizes = {base, 2 * base, 4 * base, 8 * base};
  else
    plan.sizes = {base, 2 * base};
  return plan;
}

double match_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (cplx x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        bi = j;
      }
    }
    used[bi] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

GalerkinSpectrum::GalerkinSpectrum(Potential v, BoundaryCondition bc, TruncationPlan plan)
    : v_(std::move(v)), bc_(bc), plan_(std::move(plan)) {
  if (plan_.sizes.empty()) throw PreconditionError("truncation plan has no sizes");
  if (!(plan_.tol > 0)) throw PreconditionError("truncation tolerance must be positive");
  for (std::size_t i = 1; i < plan_.sizes.size(); ++i)
    if (plan_.sizes[i] <= plan_.sizes[i - 1])
      throw PreconditionError("truncation sizes must be strictly increasing");
  // Validate bc/potential compatibility eagerly.
  if (kind_of(v_) == OperatorKind::Hill)
    (void)hill_basis(bc_, 1);
  else
    (void)dirac_basis(bc_, 1);
  cache_.resize(plan_.sizes.size());
  done_.assign(plan_.sizes.size(), false);
}

const std::vector<cplx>& GalerkinSpectrum::eigenvalues_at(std::size_t i) {
  std::lock_guard<std::mutex> lock(*mu_);
  if (!done_[i]) {
    cache_[i] = eig_all(build_matrix(v_, bc_, plan_.sizes[i]));
    done_[i] = true;
  }
  return cache_[i];
}

namespace {

std::vector<cplx> select(const std::vector<cplx>& all, const LocalizationDisc& d) {
  std::vector<cplx> s;
  for (cplx z : all)
    if (in_disc(z, d.center, d.radius)) s.push_back(z);
  std::sort(s.begin(), s.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return s;
}

std::string describe(const std::vector<cplx>& s) {
  std::ostringstream os;
  os.precision(15);
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << "}";
  return os.str();
}

}  // namespace

GalerkinSelection GalerkinSpectrum::near(cplx lambda0) {
  // Lemma radius for the natural index of lambda0.
  const OperatorKind kind = kind_of(v_);
  double r;
  if (kind == OperatorKind::Hill)
    r = std::sqrt(std::abs(lambda0)) / 4.0;
  else
    r = 0.5;
  return near(lambda0, r);
}

GalerkinSelection GalerkinSpectrum::near(cplx lambda0, double first_radius) {
  const auto ladder = localization_ladder(kind_of(v_), bc_, lambda0, first_radius);
  if (ladder.empty()) throw StructuralError("no localization disc around " + describe({lambda0}));
  const std::size_t last = plan_.sizes.size() - 1;

  // The disc is chosen by the count at the largest size computed so far.
  auto pick_disc = [&](std::size_t i) -> const LocalizationDisc* {
    for (const auto& d : ladder)
      if (static_cast<int>(select(eigenvalues_at(i), d).size()) == d.expected) return &d;
    return nullptr;
  };

  if (plan_.sizes.size() == 1) {
    const LocalizationDisc* d = pick_disc(0);
    if (!d) throw StructuralError("Galerkin disc count mismatch near " + describe({lambda0}));
    return in_disc(lambda0, *d);
  }

  std::vector<cplx> prev, cur;
  for (std::size_t i = 1; i <= last; ++i) {
    const LocalizationDisc* d = pick_disc(i);
    if (!d) {
      if (i == last) {
        std::ostringstream os;
        os << "Galerkin disc count mismatch near " << describe({lambda0}) << " at N="
           << plan_.sizes[i] << ": found " << select(eigenvalues_at(i), ladder.back()).size()
           << " in radius " << ladder.back().radius << ", expected " << ladder.back().expected;
        throw StructuralError(os.str());
      }
      continue;
    }
    prev = select(eigenvalues_at(i - 1), *d);
    cur = select(eigenvalues_at(i), *d);
    double diff = match_distance(prev, cur);
    if (diff >= plan_.tol && i >= 2) {
      // Sequences that decay steadily (ratio q per step) are extrapolated:
      // the remaining error of the last size is about diff / (q - 1).
      const double before = match_distance(select(eigenvalues_at(i - 2), *d), prev);
      const double q = before / diff;
      if (std::isfinite(q) && q >= 4.0) diff /= (q - 1.0);
    }
    if (diff < plan_.tol) {
      GalerkinSelection out = in_disc(lambda0, *d);
      out.size = plan_.sizes[i];
      out.agreement = diff;
      out.eigenvalues.clear();
      for (cplx z : cur) out.eigenvalues.push_back({z, z - lambda0});
      return out;
    }
  }
  std::ostringstream os;
  os << "Galerkin eigenvalues near " << describe({lambda0}) << " did not converge to "
     << plan_.tol << ": N=" << plan_.sizes[last - 1] << " gives " << describe(prev)
     << ", N=" << plan_.sizes[last] << " gives " << describe(cur);
  throw ConvergenceError(os.str());
}

GalerkinSelection GalerkinSpectrum::in_disc(cplx lambda0, const LocalizationDisc& disc) {
  const std::size_t last = plan_.sizes.size() - 1;
  GalerkinSelection out;
  out.disc = disc;
  out.size = plan_.sizes[last];
  const auto cur = select(eigenvalues_at(last), disc);
  if (last > 0) out.agreement = match_distance(select(eigenvalues_at(last - 1), disc), cur);
  for (cplx z : cur) out.eigenvalues.push_back({z, z - lambda0});
  return out;
}

GalerkinSelection eigs_near(const Potential& v, const BoundaryCondition& bc, cplx lambda0,
                            const TruncationPlan& plan) {
  GalerkinSpectrum spec(v, bc, plan);
  return spec.near(lambda0);
}

}  // namespace hillgap
