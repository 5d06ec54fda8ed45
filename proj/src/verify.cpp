#include "hillgap/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace hillgap {

BackendPolicy parse_backend(const std::string& s) {
  if (s == "galerkin") return BackendPolicy::Galerkin;
  if (s == "monodromy") return BackendPolicy::Monodromy;
  if (s == "both") return BackendPolicy::Both;
  throw PreconditionError("unknown backend '" + s + "' (galerkin|monodromy|both)");
}

PrecisionPolicy parse_precision_policy(const std::string& s) {
  if (s == "double") return PrecisionPolicy::Double;
  if (s == "dd") return PrecisionPolicy::DoubleDouble;
  if (s == "auto") return PrecisionPolicy::Auto;
  throw PreconditionError("unknown precision '" + s + "' (double|dd|auto)");
}

// ---- triangles ------------------------------------------------------------

namespace {

TruncationPlan plan_for(const TriangleOptions& opts, OperatorKind kind, const BoundaryCondition& bc,
                        int n_max) {
  const bool dn = bc.type == BoundaryCondition::Type::Dirichlet || bc.type == BoundaryCondition::Type::Neumann;
  if (dn && opts.dn_plan) return *opts.dn_plan;
  if (!dn && opts.plan) return *opts.plan;
  return default_plan(kind, bc, n_max);
}

bool tiny_prediction(const PredictionRecord& p) {
  if (!p.applicable) return false;
  return p.gap_log.is_zero() || p.gap_log.log_abs() < std::log(kAutoDDThreshold);
}

struct Found {
  Eigenvalue e;
  double reach = 0.0;  // |disc center - lambda0| + radius
};

std::vector<Found> mono_solve(const Potential& v, const BoundaryCondition& bc, cplx lambda0, cplx center,
                              SolveOptions so) {
  const SolveResult r = solve_bc(v, bc, center, so);
  const double reach = std::abs(r.disc.center - lambda0) + r.disc.radius;
  std::vector<Found> out;
  for (const auto& e : r.roots) out.push_back({recenter(e, center, lambda0), reach});
  return out;
}

void expect_count(const std::vector<Found>& f, std::size_t k, const char* what, int n) {
  if (f.size() != k) {
    std::ostringstream os;
    os << what << " for n = " << n << ": found " << f.size() << " eigenvalues, expected " << k;
    throw StructuralError(os.str());
  }
}

// Vertices of index n taken by position. Computed eigenvalues and the free
// eigenvalues of the same problem are both sorted by real part, and the slots
// where the free list equals lambda0 are kept. Used in the low-index regime,
// where a disc around lambda0 need not hold the right eigenvalues.
std::vector<Eigenvalue> pick_by_position(std::vector<cplx> roots, std::vector<double> free, cplx lambda0,
                                         const std::string& what) {
  if (roots.size() != free.size()) {
    std::ostringstream os;
    os << what << ": " << roots.size() << " eigenvalues against " << free.size() << " free ones";
    throw StructuralError(os.str());
  }
  std::sort(roots.begin(), roots.end(),
            [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  std::sort(free.begin(), free.end());
  std::vector<Eigenvalue> out;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (std::abs(free[i] - lambda0.real()) < 1e-9) out.push_back({roots[i], roots[i] - lambda0});
  if (out.empty()) throw StructuralError(what + ": no free eigenvalue at the reference point");
  return out;
}

std::vector<Eigenvalue> by_rank_galerkin(GalerkinSpectrum& s, const Potential& v, const BoundaryCondition& bc,
                                         cplx lambda0) {
  const bool hill = kind_of(v) == OperatorKind::Hill;
  auto at = [&](std::size_t i) {
    const int N = s.plan().sizes[i];
    std::vector<double> free;
    for (int k : hill ? hill_basis(bc, N) : dirac_basis(bc, N)) {
      free.push_back(hill ? double(k) * k : double(k));
      if (!hill) free.push_back(double(k));
    }
    return pick_by_position(s.eigenvalues_at(i), free, lambda0, "Galerkin " + bc.name() + " by rank");
  };
  const std::size_t last = s.plan().sizes.size() - 1;
  const auto sel = at(last);
  if (last > 0) {
    const auto prev = at(last - 1);
    std::vector<cplx> a, b;
    for (const auto& e : sel) a.push_back(e.value);
    for (const auto& e : prev) b.push_back(e.value);
    if (match_distance(a, b) > s.plan().tol * std::max(1.0, std::abs(lambda0)))
      throw ConvergenceError("Galerkin " + bc.name() + " eigenvalues by rank did not converge");
  }
  return sel;
}

std::vector<Eigenvalue> by_rank_monodromy(const Potential& v, const BoundaryCondition& bc, cplx lambda0,
                                          Precision prec) {
  const OperatorKind kind = kind_of(v);
  const int base = static_cast<int>(free_eigenvalues(kind, bc, 0.0, std::abs(lambda0) + 0.5).size());
  std::string last_error;
  // A window edge can fall between displaced roots; wider windows are tried.
  for (int extra = 2; extra <= 8; extra += 2) {
    const WindowSpectrum w = lowest_eigenvalues(v, bc, base + extra, prec);
    std::vector<double> free;
    const double R = std::max(std::abs(w.window.re_lo), std::abs(w.window.re_hi)) + 1.0;
    for (cplx z : free_eigenvalues(kind, bc, 0.0, R))
      if (z.real() >= w.window.re_lo && z.real() <= w.window.re_hi) free.push_back(z.real());
    try {
      return pick_by_position(w.eigenvalues, free, lambda0, bc.name() + " by rank");
    } catch (const StructuralError& e) {
      last_error = e.what();
    }
  }
  throw StructuralError(last_error);
}

std::vector<Found> as_found(const std::vector<Eigenvalue>& es) {
  std::vector<Found> out;
  for (const auto& e : es) out.push_back({e, std::abs(e.offset) * (1 + 1e-12)});
  return out;
}

double vertex_distance(const SpectralTriangle& a, const SpectralTriangle& b) {
  double d = match_distance({a.z_minus, a.z_plus}, {b.z_minus, b.z_plus});
  d = std::max(d, std::abs(a.z_mu - b.z_mu));
  if (a.z_nu && b.z_nu) d = std::max(d, std::abs(*a.z_nu - *b.z_nu));
  return d;
}

}  // namespace

GalerkinCache::GalerkinCache(Potential v, TriangleOptions opts) : v_(std::move(v)), opts_(std::move(opts)) {}

GalerkinSpectrum& GalerkinCache::get(const BoundaryCondition& bc) {
  std::lock_guard<std::mutex> lock(mu_);
  const std::string key = bc.name();
  for (auto& [k, s] : entries_)
    if (k == key) return *s;
  const int n_max = std::max(opts_.n_max, 1);
  entries_.emplace_back(key, std::make_unique<GalerkinSpectrum>(v_, bc, plan_for(opts_, kind_of(v_), bc, n_max)));
  return *entries_.back().second;
}

TriangleResult compute_triangle(const Potential& v, int n, const TriangleOptions& opts,
                                const std::optional<PredictionRecord>& pred, GalerkinCache* cache) {
  const OperatorKind kind = kind_of(v);
  const cplx lambda0 = reference_point(kind, n);
  const BoundaryCondition pbc = parity_bc(n);
  const bool hill = kind == OperatorKind::Hill;
  const bool want_nu = hill && opts.neumann;

  std::unique_ptr<GalerkinCache> local;
  if (!cache) {
    TriangleOptions o = opts;
    o.n_max = std::max(opts.n_max, std::abs(n));
    local = std::make_unique<GalerkinCache>(v, o);
    cache = local.get();
  }

  TriangleResult res;
  bool use_galerkin = opts.backend != BackendPolicy::Monodromy;
  bool use_mono = opts.backend != BackendPolicy::Galerkin;
  if (!use_mono && pred && pred->applicable && !pred->gap_log.is_zero() &&
      pred->gap_log.log_abs() < std::log(1e-10)) {
    use_mono = true;
    res.warnings.push_back("predicted gap below 1e-10: monodromy added");
  }

  Precision prec = Precision::Double;
  if (opts.precision == PrecisionPolicy::DoubleDouble) prec = Precision::DoubleDouble;
  if (opts.precision == PrecisionPolicy::Auto && pred && tiny_prediction(*pred)) prec = Precision::DoubleDouble;
  res.precision_used = prec;

  // Galerkin triangle.
  std::vector<cplx> seeds_pair, seeds_mu, seeds_nu;
  std::vector<Eigenvalue> gpair;
  if (use_galerkin) {
    try {
      GalerkinSpectrum& ps = cache->get(pbc);
      double radius = 0.0;
      try {
        const GalerkinSelection pair = ps.near(lambda0);
        if (pair.eigenvalues.size() != 2)
          throw StructuralError("Galerkin pair count " + std::to_string(pair.eigenvalues.size()));
        gpair = pair.eigenvalues;
        radius = pair.disc.radius;
      } catch (const StructuralError& e) {
        gpair = by_rank_galerkin(ps, v, pbc, lambda0);
        if (gpair.size() != 2) throw;
        radius = std::max(std::abs(gpair[0].offset), std::abs(gpair[1].offset)) * (1 + 1e-12);
        res.warnings.push_back(std::string("Galerkin pair taken by rank: ") + e.what());
      }
      auto simple = [&](const BoundaryCondition& bc) {
        GalerkinSpectrum& gs = cache->get(bc);
        try {
          const GalerkinSelection d = gs.near(lambda0);
          if (d.eigenvalues.size() != 1) throw StructuralError("Galerkin " + bc.name() + " count");
          radius = std::max(radius, d.disc.radius);
          return d.eigenvalues[0];
        } catch (const StructuralError& e) {
          const auto r = by_rank_galerkin(gs, v, bc, lambda0);
          if (r.size() != 1) throw;
          radius = std::max(radius, std::abs(r[0].offset) * (1 + 1e-12));
          res.warnings.push_back("Galerkin " + bc.name() + " eigenvalue taken by rank: " + e.what());
          return r[0];
        }
      };
      std::optional<Eigenvalue> mu;
      if (hill) mu = simple(BoundaryCondition::dirichlet());
      std::optional<Eigenvalue> nu;
      if (want_nu) {
        try {
          nu = simple(BoundaryCondition::neumann());
        } catch (const std::exception& e) {
          res.warnings.push_back(std::string("Galerkin Neumann eigenvalue omitted: ") + e.what());
        }
      }
      for (const auto& e : gpair) seeds_pair.push_back(e.value);
      if (mu) seeds_mu.push_back(mu->value);
      if (nu) seeds_nu.push_back(nu->value);
      if (mu) {
        res.galerkin = build_triangle(n, kind, gpair[0], gpair[1], *mu, nu, std::max(radius, lemma_radius(kind, n)));
      } else {
        // The Dirac Dirichlet problem has no Galerkin basis here; mu comes from monodromy below.
        use_mono = true;
      }
      res.radius = std::max(res.radius, radius);
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::exception& e) {
      if (!use_mono) throw;
      res.warnings.push_back(std::string("Galerkin failed: ") + e.what());
      seeds_pair.clear();
      gpair.clear();
    }
  }

  if (use_mono) {
    // Disc search first; certified rank in a window when the disc count fails.
    auto solve = [&](const BoundaryCondition& bc, std::size_t expected, const std::vector<cplx>& seeds,
                     std::optional<cplx> gap) {
      SolveOptions so;
      so.precision = prec;
      so.seeds = seeds;
      so.predicted_gap = gap;
      try {
        auto f = mono_solve(v, bc, lambda0, lambda0, so);
        expect_count(f, expected, (bc.name() + " eigenvalues").c_str(), n);
        return f;
      } catch (const StructuralError& e) {
        auto f = as_found(by_rank_monodromy(v, bc, lambda0, prec));
        expect_count(f, expected, (bc.name() + " eigenvalues by rank").c_str(), n);
        res.warnings.push_back(bc.name() + " taken by rank: " + e.what());
        return f;
      }
    };

    std::optional<cplx> gap;
    if (pred && pred->applicable && !pred->gap_log.is_zero()) gap = pred->gap_pred;
    const auto pair = solve(pbc, 2, seeds_pair, gap);
    const double lemma = lemma_radius(kind, n) * (1 + 1e-9);

    std::vector<Found> mu;
    if (hill || std::max(pair[0].reach, pair[1].reach) <= lemma) {
      mu = solve(BoundaryCondition::dirichlet(), 1, seeds_mu, std::nullopt);
    } else {
      // Dirac low-index regime: Dirichlet roots are spaced by one, so a disc
      // around lambda0 can hold a root of the neighbouring index.
      mu = as_found(by_rank_monodromy(v, BoundaryCondition::dirichlet(), lambda0, prec));
      expect_count(mu, 1, "dir eigenvalues by rank", n);
      res.warnings.push_back("Dirichlet eigenvalue taken by rank (pair outside the Lemma disc)");
    }

    std::optional<Eigenvalue> nu;
    double reach = std::max({pair[0].reach, pair[1].reach, mu[0].reach});
    if (want_nu) {
      try {
        const auto f = solve(BoundaryCondition::neumann(), 1, seeds_nu, std::nullopt);
        nu = f[0].e;
        reach = std::max(reach, f[0].reach);
      } catch (const std::exception& e) {
        res.warnings.push_back(std::string("Neumann eigenvalue omitted: ") + e.what());
      }
    }
    res.radius = std::max(res.radius, reach);
    res.monodromy = build_triangle(n, kind, pair[0].e, pair[1].e, mu[0].e, nu, std::max(reach, lemma_radius(kind, n)));

    if (use_galerkin && !res.galerkin && gpair.size() == 2) {
      // Dirac: pair from Galerkin, mu from monodromy.
      res.galerkin = build_triangle(n, kind, gpair[0], gpair[1], mu[0].e, std::nullopt,
                                    std::max({reach, res.radius, lemma_radius(kind, n)}));
    }
  }

  if (res.monodromy) {
    res.chosen = *res.monodromy;
  } else if (res.galerkin) {
    res.chosen = *res.galerkin;
  } else {
    throw StructuralError("no backend produced a triangle for n = " + std::to_string(n));
  }
  if (res.monodromy && res.galerkin) {
    res.disagreement = vertex_distance(*res.monodromy, *res.galerkin);
    if (*res.disagreement > 1e-8) {
      std::ostringstream os;
      os << "backends disagree by " << *res.disagreement << "; monodromy kept";
      res.warnings.push_back(os.str());
    }
  }
  return res;
}

// ---- inequality checks ----------------------------------------------------

namespace {

// log(|B-| + |B+|), or -inf when both vanish.
double log_proxy_sum(const BetaProxy& p) {
  const bool zm = p.b_minus.is_zero(), zp = p.b_plus.is_zero();
  if (zm && zp) return -std::numeric_limits<double>::infinity();
  if (zm) return p.b_plus.log_abs();
  if (zp) return p.b_minus.log_abs();
  const double a = p.b_minus.log_abs(), b = p.b_plus.log_abs();
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

BoundCheck check_enclosure(const SpectralTriangle& tri, const BetaProxy& proxy) {
  BoundCheck c;
  c.note = "proxy-based";
  const double ls = log_proxy_sum(proxy);
  if (std::isinf(ls)) {
    c.note = "proxy-based; skipped (zero proxy)";
    return c;
  }
  c.applicable = true;
  c.value = std::abs(tri.gap) + std::abs(tri.deviation_plus);
  const double lv = c.value > 0 ? std::log(c.value) : -std::numeric_limits<double>::infinity();
  c.lower = std::exp(ls) / 144.0;
  c.upper = std::exp(ls) * 58.0;
  // Slack ratios in log space so that far-underflow proxies still compare.
  c.lower_slack = std::exp(lv - (ls - std::log(144.0)));
  c.upper_slack = std::exp((ls + std::log(58.0)) - lv);
  c.ok = c.lower_slack >= 1.0 && c.upper_slack >= 1.0;
  return c;
}

BoundCheck check_gap_bound(const SpectralTriangle& tri, const BetaProxy& proxy, double eta) {
  BoundCheck c;
  c.note = "proxy-based";
  const double ls = log_proxy_sum(proxy);
  const auto t = compute_t_n(proxy);
  if (std::isinf(ls) || !t) {
    c.note = "proxy-based; skipped (zero proxy)";
    return c;
  }
  c.applicable = true;
  const double g = std::abs(tri.gap);
  c.value = g > 0 ? std::exp(std::log(g) - ls) : 0.0;
  const double center = gap_bound_center(*t);
  c.lower = center - eta;
  c.upper = center + eta;
  c.lower_slack = c.value - c.lower;
  c.upper_slack = c.upper - c.value;
  c.ok = c.lower_slack >= 0.0 && c.upper_slack >= 0.0;
  return c;
}

std::optional<double> check_neumann_equivalence(const SpectralTriangle& tri) {
  if (!tri.z_nu) return std::nullopt;
  const double g = std::abs(tri.gap);
  const double den = std::abs(tri.deviation_plus) + g;
  if (den == 0.0) return std::nullopt;
  return (std::abs(*tri.z_nu - tri.z_plus) + g) / den;
}

SelfAdjointResiduals check_self_adjoint_corollaries(const SpectralTriangle& tri, const BetaProxy& proxy) {
  SelfAdjointResiduals r;
  if (proxy.b_plus.is_zero()) return r;
  const cplx B = proxy.plus();
  const double absB = std::abs(B);
  if (absB == 0.0 || !std::isfinite(absB)) return r;
  const double c = B.real() / absB;
  const bool hill = tri.kind == OperatorKind::Hill;
  auto resid = [](cplx measured, double predicted) -> std::optional<double> {
    if (predicted == 0.0) return std::nullopt;
    return std::abs(measured / predicted - 1.0);
  };

  if (hill) {
    if (std::abs(c + 1.0) > kClusterGuard) r.dev_plus = resid(tri.deviation_plus, -B.real() - absB);
    if (std::abs(c - 1.0) > kClusterGuard) r.dev_minus = resid(tri.deviation_minus, -B.real() + absB);
    if (std::abs(c) > kClusterGuard) r.midpoint = resid(tri.midpoint_dev, -B.real());
  } else {
    if (std::abs(c + 1.0) > kClusterGuard) r.dev_minus = resid(tri.deviation_minus, B.real() + absB);
    if (std::abs(c - 1.0) > kClusterGuard) r.dev_plus = resid(tri.deviation_plus, B.real() - absB);
    if (std::abs(c) > kClusterGuard) r.midpoint = resid(tri.midpoint_dev, B.real());
  }

  // Nonnegative coefficients: B- = B+ > 0.
  const bool positive = std::abs(proxy.minus() / B - 1.0) < 1e-12 && std::abs(std::arg(B)) < 1e-12;
  if (positive) {
    r.gap_vs_2b = resid(tri.gap, 2.0 * absB);
    const double g = std::abs(tri.gap);
    if (hill) {
      r.far_vs_2b = resid(-tri.deviation_plus, 2.0 * absB);
      if (g > 0) r.near_over_gap = std::abs(tri.deviation_minus) / g;
    } else {
      r.far_vs_2b = resid(tri.deviation_minus, 2.0 * absB);
      if (g > 0) r.near_over_gap = std::abs(tri.deviation_plus) / g;
    }
  }
  return r;
}

namespace {

double ordering_tolerance(const SpectralTriangle& tri, Precision p, bool galerkin_only) {
  const double scale = 1.0 + std::abs(tri.lambda0);
  if (galerkin_only) return 1e-10 * scale;
  const double eps = p == Precision::DoubleDouble ? std::ldexp(1.0, -104) : std::ldexp(1.0, -52);
  // Newton accepts roots at a noise floor of 1e3 times its 4 eps threshold;
  // a nearly double root loses accuracy in proportion to 1/gap, down to sqrt(eps).
  const double g = std::max(std::abs(tri.gap), std::sqrt(eps));
  return 4e3 * eps * scale * std::max(1.0, 1.0 / g);
}

bool ordering_with_tol(const SpectralTriangle& tri, double tol) {
  for (cplx z : {tri.z_minus, tri.z_plus, tri.z_mu})
    if (std::abs(z.imag()) >= 1e-8) return false;
  return tri.z_minus.real() <= tri.z_mu.real() + tol && tri.z_mu.real() <= tri.z_plus.real() + tol;
}

}  // namespace

bool self_adjoint_ordering(const SpectralTriangle& tri) {
  return ordering_with_tol(tri, ordering_tolerance(tri, Precision::Double, false));
}

// ---- spectra comparison ---------------------------------------------------

std::vector<int> min_weight_assignment(const std::vector<std::vector<double>>& cost) {
  // Hungarian method with potentials, rows <= cols.
  const int n = static_cast<int>(cost.size());
  if (n == 0) return {};
  const int m = static_cast<int>(cost[0].size());
  if (m < n) throw PreconditionError("assignment needs at least as many columns as rows");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] > 0) col[p[j] - 1] = j - 1;
  return col;
}

namespace {

// Largest matched distance of `rows` into `cols` plus the method that produced it.
std::pair<double, std::string> match_into(const std::vector<cplx>& rows, const std::vector<cplx>& cols,
                                          double tol) {
  std::vector<char> taken(cols.size(), 0);
  double worst = 0.0;
  for (cplx z : rows) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (taken[j]) continue;
      const double d = std::abs(z - cols[j]);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    taken[best] = 1;
    worst = std::max(worst, bd);
  }
  if (worst < tol) return {worst, "greedy"};

  // Minimize the sum of squared distances; the result is then checked by its maximum.
  std::vector<std::vector<double>> cost(rows.size(), std::vector<double>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) cost[i][j] = std::norm(rows[i] - cols[j]);
  const auto col = min_weight_assignment(cost);
  double w2 = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) w2 = std::max(w2, std::abs(rows[i] - cols[col[i]]));
  return {std::min(worst, w2), "assignment"};
}

}  // namespace

SpectrumComparison compare_spectra(const std::vector<cplx>& a, const std::vector<cplx>& b, int count,
                                   double tol) {
  const std::size_t k = static_cast<std::size_t>(count);
  if (count < 1) throw PreconditionError("count must be positive");
  if (a.size() < k || b.size() < k) {
    std::ostringstream os;
    os << "eigenvalue count mismatch inside the search window: " << a.size() << " vs " << b.size()
       << ", need " << count;
    throw StructuralError(os.str());
  }
  SpectrumComparison out;
  out.first.assign(a.begin(), a.begin() + count);
  out.second.assign(b.begin(), b.begin() + count);
  const auto [d1, m1] = match_into(out.first, b, tol);
  const auto [d2, m2] = match_into(out.second, a, tol);
  out.max_deviation = std::max(d1, d2);
  out.method = (m1 == "greedy" && m2 == "greedy") ? "greedy" : "assignment";
  out.ok = out.max_deviation < tol;
  return out;
}

namespace {

SpectrumComparison compare_potentials(const Potential& v1, const Potential& v2, double t, int count) {
  const BoundaryCondition bc = BoundaryCondition::quasi(t);
  const WindowSpectrum s1 = lowest_eigenvalues(v1, bc, count);
  const WindowSpectrum s2 = lowest_eigenvalues(v2, bc, count);
  return compare_spectra(s1.eigenvalues, s2.eigenvalues, count, 1e-8);
}

}  // namespace

SpectrumComparison check_isospectral(cplx a, cplx b, cplx c, cplx d, double t, int count) {
  const cplx ab = a * b, cd = c * d;
  if (std::abs(ab - cd) > 1e-14 * std::max(1.0, std::abs(ab))) {
    std::ostringstream os;
    os.precision(17);
    os << "isospectral pair needs ab = cd: ab = " << ab << ", cd = " << cd;
    throw PreconditionError(os.str());
  }
  const HillPotential v1{{{-1, a}, {1, b}}};
  const HillPotential v2{{{-1, c}, {1, d}}};
  return compare_potentials(v1, v2, t, count);
}

SpectrumComparison check_shift_invariance(const Potential& v, cplx zeta, double t, int count) {
  return compare_potentials(v, shift_potential(v, zeta), t, count);
}

// ---- family runs ----------------------------------------------------------

bool trend_non_increasing(const std::vector<double>& errors) {
  if (errors.size() < 2) return true;
  const std::size_t start = (errors.size() - 1) / 2;
  int inversions = 0;
  for (std::size_t i = start; i + 1 < errors.size(); ++i)
    if (errors[i + 1] > errors[i]) ++inversions;
  return inversions <= 1;
}

namespace {

std::optional<cplx> ratio(cplx measured, const std::optional<cplx>& pred) {
  if (!pred || *pred == 0.0) return std::nullopt;
  return measured / *pred;
}

void fill_row(ReportRow& row, const Potential& v, const FamilySpec& fam, const RunOptions& opts,
              GalerkinCache& cache) {
  row.prediction = predict(fam, row.n);
  const PredictionRecord& p = row.prediction;
  row.triangles = compute_triangle(v, row.n, opts.triangle, p, &cache);
  const SpectralTriangle& tri = row.triangles->chosen;
  row.computed = true;

  row.t_n = compute_t_n(p.beta);
  row.r_n = compute_r_n(tri);
  row.enclosure = check_enclosure(tri, p.beta);
  row.gap_bound = check_gap_bound(tri, p.beta, opts.eta);
  row.neumann_ratio = check_neumann_equivalence(tri);

  if (p.applicable) {
    if (!p.gap_log.is_zero() && tri.gap != 0.0) {
      // Ratio formed in log space; the prediction may lie below double range.
      const cplx r = (LogComplex::from(tri.gap) / p.gap_log).value();
      if (!p.sign_resolved && std::abs(-r - 1.0) < std::abs(r - 1.0)) {
        row.sign_choice = -1;
        row.gap_ratio = -r;
      } else {
        row.gap_ratio = r;
      }
      row.sign_matched = !p.sign_resolved;
    }
    // A flipped root swaps the two deviation forms; the midpoint is unaffected.
    auto dp = p.dev_plus_pred, dm = p.dev_minus_pred;
    if (row.sign_choice < 0) std::swap(dp, dm);
    row.dev_plus_ratio = ratio(tri.deviation_plus, dp);
    row.dev_minus_ratio = ratio(tri.deviation_minus, dm);
    row.midpoint_ratio = ratio(tri.midpoint_dev, p.midpoint_pred);
  }

  if (is_self_adjoint(v)) {
    row.self_adjoint = check_self_adjoint_corollaries(tri, p.beta);
    const bool galerkin_only = !row.triangles->monodromy;
    row.ordering_ok =
        ordering_with_tol(tri, ordering_tolerance(tri, row.triangles->precision_used, galerkin_only));
  }
}

std::vector<double> trend_series(const std::vector<ReportRow>& rows,
                                 std::optional<cplx> ReportRow::*field) {
  std::vector<std::pair<int, double>> pos, neg;
  for (const auto& r : rows) {
    const auto& f = r.*field;
    if (!f) continue;
    (r.n > 0 ? pos : neg).push_back({std::abs(r.n), std::abs(*f - 1.0)});
  }
  auto& use = pos.empty() ? neg : pos;
  std::sort(use.begin(), use.end());
  std::vector<double> out;
  for (const auto& [n, e] : use) out.push_back(e);
  return out;
}

}  // namespace

VerificationReport run_family(const FamilySpec& fam, const std::vector<int>& ns, const RunOptions& opts) {
  VerificationReport rep;
  rep.family = fam;
  const Potential v = potential_of(fam);

  std::vector<int> todo;
  for (int n : ns) {
    std::string why;
    if (admissible(fam, n, &why)) {
      todo.push_back(n);
    } else {
      rep.skipped.push_back("n = " + std::to_string(n) + ": " + why);
    }
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

  TriangleOptions topts = opts.triangle;
  for (int n : todo) topts.n_max = std::max(topts.n_max, std::abs(n));
  GalerkinCache cache(v, topts);
  RunOptions ropts = opts;
  ropts.triangle = topts;

  rep.rows.resize(todo.size());
  for (std::size_t i = 0; i < todo.size(); ++i) rep.rows[i].n = todo[i];

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      ReportRow& row = rep.rows[i];
      try {
        fill_row(row, v, fam, ropts, cache);
      } catch (const PreconditionError&) {
        throw;
      } catch (const std::exception& e) {
        row.computed = false;
        row.error = e.what();
      }
    }
  };
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max<int>(1, static_cast<int>(todo.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex fm;
    for (int k = 0; k < threads; ++k)
      pool.emplace_back([&]() {
        try {
          worker();
        } catch (...) {
          std::lock_guard<std::mutex> lock(fm);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  ReportSummary& s = rep.summary;
  std::vector<std::optional<double>> ts, rs;
  for (const auto& r : rep.rows) {
    if (!r.computed) {
      ++s.rows_failed;
      continue;
    }
    ts.push_back(r.t_n);
    rs.push_back(r.r_n);
    if (r.enclosure.applicable && !r.enclosure.ok) ++s.enclosure_failures;
    if (r.gap_bound.applicable && !r.gap_bound.ok) ++s.gap_bound_failures;
    if (r.ordering_ok && !*r.ordering_ok) ++s.ordering_failures;
    if (r.triangles->disagreement) {
      s.max_backend_disagreement = std::max(s.max_backend_disagreement, *r.triangles->disagreement);
      if (*r.triangles->disagreement > 1e-8) ++s.backend_failures;
    }
  }
  s.t_sup = window_sup(ts);
  s.r_sup = window_sup(rs);
  s.gap_trend_ok = trend_non_increasing(trend_series(rep.rows, &ReportRow::gap_ratio));
  s.midpoint_trend_ok = trend_non_increasing(trend_series(rep.rows, &ReportRow::midpoint_ratio));
  return rep;
}

bool VerificationReport::hard_checks_pass() const {
  return summary.rows_failed == 0 && summary.ordering_failures == 0 && summary.backend_failures == 0;
}

}  // namespace hillgap
