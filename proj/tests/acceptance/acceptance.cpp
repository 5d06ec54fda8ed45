// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hillgap/verify.hpp"

using namespace hillgap;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Log {
 public:
  void fail(const std::string& s) {
    pass_ = false;
    if (fails_++ < 6) os_ << (os_.tellp() > 0 ? "; " : "") << s;
  }
  void note(const std::string& s) { os_ << (os_.tellp() > 0 ? "; " : "") << s; }
  Outcome done() {
    if (fails_ > 6) os_ << "; ... " << fails_ - 6 << " more";
    return {pass_, os_.str()};
  }

 private:
  bool pass_ = true;
  int fails_ = 0;
  std::ostringstream os_;
};

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_runtime(Log& log, double secs, double limit) {
  if (secs > limit) log.fail("runtime " + g(secs) + " s exceeds " + g(limit) + " s");
  else log.note("runtime " + g(secs) + " s");
}

// ---- 1 ---------------------------------------------------------------------

Outcome free_exactness() {
  Log log;
  const auto t0 = std::chrono::steady_clock::now();
  const double tol = 1e-10;
  double worst = 0;
  const SolveOptions mono;

  auto expect = [&](const std::string& what, const std::vector<cplx>& got, std::size_t count, double want) {
    if (got.size() != count) {
      log.fail(what + ": " + std::to_string(got.size()) + " eigenvalues, want " + std::to_string(count));
      return;
    }
    for (cplx z : got) {
      worst = std::max(worst, std::abs(z - want));
      if (std::abs(z - want) > tol) log.fail(what + ": off by " + g(std::abs(z - want)));
    }
  };
  auto values = [](const auto& roots) {
    std::vector<cplx> v;
    for (const auto& e : roots) v.push_back(e.value);
    return v;
  };

  const HillPotential zero;
  const TruncationPlan plan{{32, 64}, 1e-10};
  for (auto bc : {BoundaryCondition::per_plus(), BoundaryCondition::per_minus(), BoundaryCondition::dirichlet(),
                  BoundaryCondition::neumann()}) {
    GalerkinSpectrum gs(zero, bc, plan);
    for (int n = 0; n <= 12; ++n) {
      std::size_t count = 0;
      if (bc.is_floquet()) {
        if ((n % 2 == 0) != (bc.type == BoundaryCondition::Type::PerPlus)) continue;
        count = n == 0 ? 1 : 2;
      } else {
        if (bc.type == BoundaryCondition::Type::Dirichlet && n == 0) continue;
        count = 1;
      }
      const double lam = double(n) * n;
      const double r = n == 0 ? 0.5 : 0.0;
      SolveOptions o = mono;
      o.first_radius = r;
      const std::string tag = "Hill " + bc.name() + " n=" + std::to_string(n);
      expect(tag + " galerkin", values((r > 0 ? gs.near(lam, r) : gs.near(lam)).eigenvalues), count, lam);
      expect(tag + " monodromy", values(solve_bc(zero, bc, lam, o).roots), count, lam);
    }
  }

  const DiracPotential dzero;
  for (auto bc : {BoundaryCondition::per_plus(), BoundaryCondition::per_minus(), BoundaryCondition::dirichlet()}) {
    std::optional<GalerkinSpectrum> gs;
    if (bc.is_floquet()) gs.emplace(dzero, bc, plan);
    for (int n = -12; n <= 12; ++n) {
      if (bc.is_floquet() && (n % 2 == 0) != (bc.type == BoundaryCondition::Type::PerPlus)) continue;
      const std::size_t count = bc.is_floquet() ? 2 : 1;
      const std::string tag = "Dirac " + bc.name() + " n=" + std::to_string(n);
      if (gs) expect(tag + " galerkin", values(gs->near(double(n)).eigenvalues), count, n);
      expect(tag + " monodromy", values(solve_bc(dzero, bc, double(n), mono).roots), count, n);
    }
  }
  log.note("max deviation " + g(worst));
  check_runtime(log, seconds_since(t0), 5.0);
  return log.done();
}

// ---- 2 ---------------------------------------------------------------------

Outcome backend_agreement() {
  Log log;
  const auto t0 = std::chrono::steady_clock::now();
  TriangleOptions o;
  o.backend = BackendPolicy::Both;
  o.precision = PrecisionPolicy::Double;
  o.plan = TruncationPlan{{32, 64}, 1e-10};
  o.n_max = 8;
  double worst = 0;
  for (auto [name, b] : {std::pair{"Mathieu", 1.0}, std::pair{"two-exp(1,4)", 4.0}}) {
    const HillPotential v{{{-1, 1.0}, {1, b}}};
    GalerkinCache cache(v, o);
    for (int n = 1; n <= 8; ++n) {
      try {
        const auto r = compute_triangle(v, n, o, std::nullopt, &cache);
        if (!r.disagreement) {
          log.fail(std::string(name) + " n=" + std::to_string(n) + ": only one backend ran");
          continue;
        }
        worst = std::max(worst, *r.disagreement);
        if (*r.disagreement > 1e-8)
          log.fail(std::string(name) + " n=" + std::to_string(n) + ": disagreement " + g(*r.disagreement));
      } catch (const std::exception& e) {
        log.fail(std::string(name) + " n=" + std::to_string(n) + ": " + e.what());
      }
    }
  }
  log.note("max disagreement " + g(worst));
  check_runtime(log, seconds_since(t0), 30.0);
  return log.done();
}

// ---- 3 ---------------------------------------------------------------------

Outcome isospectrality() {
  Log log;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  auto record = [&](const std::string& tag, const std::function<SpectrumComparison()>& f) {
    try {
      const auto c = f();
      worst = std::max(worst, c.max_deviation);
      if (!c.ok) log.fail(tag + ": deviation " + g(c.max_deviation));
    } catch (const std::exception& e) {
      log.fail(tag + ": " + e.what());
    }
  };
  const HillPotential mathieu{{{-1, 1.0}, {1, 1.0}}};
  const Potential dirac = potential_of(make_dirac_two_exp(1.0, 1.0, 1.0, 1.0));
  for (double t : {0.0, pi / 3, pi}) {
    record("pair t=" + g(t), [&] { return check_isospectral(1.0, 4.0, 2.0, 2.0, t, 12); });
    record("Mathieu shift t=" + g(t), [&] { return check_shift_invariance(mathieu, cplx(0.3, 0.2), t, 12); });
    record("Dirac shift t=" + g(t), [&] { return check_shift_invariance(dirac, 0.5, t, 12); });
  }
  log.note("max deviation " + g(worst));
  check_runtime(log, seconds_since(t0), 60.0);
  return log.done();
}

// ---- 4 ---------------------------------------------------------------------

Outcome self_adjoint() {
  Log log;
  TriangleOptions o;
  o.n_max = 8;
  int checked = 0;
  for (double a : {0.5, 1.0, 2.0}) {
    const HillPotential v{{{-1, a}, {1, a}}};
    GalerkinCache cache(v, o);
    for (int n = 1; n <= 8; ++n) {
      const std::string tag = "a=" + g(a) + " n=" + std::to_string(n);
      try {
        const auto pred = predict(make_two_exp(a, a), n);
        const auto r = compute_triangle(v, n, o, pred, &cache);
        const auto& t = r.chosen;
        const double im = std::max({std::abs(t.lambda_minus.imag()), std::abs(t.lambda_plus.imag()),
                                    std::abs(t.mu.imag())});
        if (im >= 1e-8) log.fail(tag + ": imaginary part " + g(im));
        if (!self_adjoint_ordering(t)) log.fail(tag + ": mu outside [lambda-, lambda+]");
        ++checked;
      } catch (const std::exception& e) {
        log.fail(tag + ": " + e.what());
      }
    }
  }
  log.note(std::to_string(checked) + " triangles ordered");
  return log.done();
}

// ---- shared family runs for 5 to 10 ----------------------------------------

struct FamilyRuns {
  VerificationReport mathieu, two_exp, dirac_even, dirac_odd;
};

RunOptions run_options() {
  RunOptions o;
  o.eta = 0.3;
  return o;
}

double ratio_error(const std::optional<cplx>& r) { return r ? std::abs(*r - 1.0) : std::numeric_limits<double>::infinity(); }

// ---- 5 ---------------------------------------------------------------------

Outcome harrell_avron_simon(const VerificationReport& rep) {
  Log log;
  std::vector<double> errs;
  for (const auto& row : rep.rows) {
    const std::string tag = "n=" + std::to_string(row.n);
    if (!row.computed) {
      log.fail(tag + ": " + row.error);
      errs.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    if (row.n == 6 && row.triangles->precision_used != Precision::DoubleDouble)
      log.fail(tag + ": monodromy did not use double-double");
    const double pred = std::abs(predict_mathieu_refined(1.0, row.n).value);
    const double e = std::abs(std::abs(row.triangle()->gap) / pred - 1.0);
    const double tol = std::max(0.02, 10.0 / (4.0 * row.n * row.n * row.n));
    errs.push_back(e);
    log.note(tag + " |ratio-1| " + g(e));
    if (e > tol) log.fail(tag + ": |ratio-1| " + g(e) + " > " + g(tol));
  }
  for (std::size_t k = 0; k + 1 < errs.size(); ++k)
    if (!(errs[k + 1] < errs[k])) log.fail("|ratio-1| does not decrease");
  return log.done();
}

// ---- 6 ---------------------------------------------------------------------

Outcome levy_keller() {
  Log log;
  TriangleOptions o;
  o.n_max = 2;
  std::vector<double> errs;
  for (double a : {0.4, 0.2, 0.1}) {
    const HillPotential v{{{-1, a}, {1, a}}};
    try {
      const auto r = compute_triangle(v, 2, o, predict(make_two_exp(a, a), 2));
      const double e = std::abs(std::abs(r.chosen.gap) / predict_levy_keller(a, 2) - 1.0);
      errs.push_back(e);
      log.note("a=" + g(a) + " |ratio-1| " + g(e));
    } catch (const std::exception& e) {
      log.fail("a=" + g(a) + ": " + e.what());
      return log.done();
    }
  }
  for (std::size_t k = 0; k + 1 < errs.size(); ++k)
    if (errs[k] < 1.5 * errs[k + 1]) log.fail("reduction " + g(errs[k] / errs[k + 1]) + " < 1.5");
  return log.done();
}

// ---- 7 ---------------------------------------------------------------------

Outcome midpoint_deviation(const VerificationReport& rep) {
  Log log;
  std::vector<double> mid;
  for (const auto& row : rep.rows) {
    const std::string tag = "n=" + std::to_string(row.n);
    if (!row.computed) {
      log.fail(tag + ": " + row.error);
      continue;
    }
    const double em = ratio_error(row.midpoint_ratio), eg = ratio_error(row.gap_ratio);
    mid.push_back(em);
    log.note(tag + " midpoint " + g(em) + " gap " + g(eg) + (row.sign_matched ? " (sign matched)" : ""));
    if (em > 0.35) log.fail(tag + ": midpoint |ratio-1| " + g(em) + " > 0.35");
    if (eg > 0.35) log.fail(tag + ": gap |ratio-1| " + g(eg) + " > 0.35");
  }
  if (!trend_non_increasing(mid)) log.fail("midpoint error not non-increasing");
  return log.done();
}

// ---- 8 ---------------------------------------------------------------------

Outcome dirac_even_gaps(const VerificationReport& even, const VerificationReport& odd) {
  Log log;
  double worst = 0;
  for (const auto& row : even.rows) {
    const std::string tag = "n=" + std::to_string(row.n);
    if (!row.computed) {
      log.fail(tag + ": " + row.error);
      continue;
    }
    const double gap = std::abs(row.triangle()->gap);
    worst = std::max(worst, gap);
    if (gap > 1e-8) log.fail(tag + ": |gap| " + g(gap));
  }
  log.note("max even |gap| " + g(worst));
  for (const auto& row : odd.rows) {
    const std::string tag = "n=" + std::to_string(row.n);
    if (!row.computed) {
      log.fail(tag + ": " + row.error);
      continue;
    }
    const double e = ratio_error(row.gap_ratio);
    log.note(tag + " gap |ratio-1| " + g(e));
    if (e > 0.35) log.fail(tag + ": gap |ratio-1| " + g(e) + " > 0.35");
  }
  return log.done();
}

// ---- 9, 10 -----------------------------------------------------------------

template <class Pick>
Outcome proxy_bounds(const FamilyRuns& runs, Pick pick, const char* what) {
  Log log;
  int checked = 0;
  for (const auto* rep : {&runs.mathieu, &runs.two_exp, &runs.dirac_even, &runs.dirac_odd}) {
    for (const auto& row : rep->rows) {
      if (row.n < 4 || !row.computed) continue;
      const BoundCheck& c = pick(row);
      if (!c.applicable) continue;
      ++checked;
      if (!c.ok)
        log.fail(family_name(rep->family) + " n=" + std::to_string(row.n) + ": " + what + " value " + g(c.value) +
                 " outside [" + g(c.lower) + ", " + g(c.upper) + "]");
    }
  }
  log.note(std::to_string(checked) + " rows checked");
  return log.done();
}

// ---- 11 --------------------------------------------------------------------

template <class F>
cplx quad(F f) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double x) { return f(x).real(); };
  auto im = [&](double x) { return f(x).imag(); };
  return {gauss_kronrod<double, 61>::integrate(re, 0.0, pi, 5, 1e-13),
          gauss_kronrod<double, 61>::integrate(im, 0.0, pi, 5, 1e-13)};
}

cplx eval(const std::map<int, cplx>& c, double x) {
  cplx s = 0;
  for (const auto& [k, a] : c) s += a * std::exp(cplx(0, 2.0 * k * x));
  return s;
}

Outcome assembly_oracle() {
  Log log;
  std::mt19937 rng(31337);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> pick(1, 3);
  auto draw = [&] {
    std::map<int, cplx> c;
    const int K = pick(rng);
    for (int k = -K; k <= K; ++k) c[k] = {gauss(rng), gauss(rng)};
    return c;
  };
  double worst = 0;
  auto cmp = [&](cplx got, cplx want, const std::string& tag) {
    worst = std::max(worst, std::abs(got - want));
    if (std::abs(got - want) > 1e-12) log.fail(tag + " off by " + g(std::abs(got - want)));
  };
  const int N = 6;
  for (int d = 0; d < 10; ++d) {
    const HillPotential v{draw()};
    for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann()}) {
      const bool dir = bc.type == BoundaryCondition::Type::Dirichlet;
      const Matrix M = build_hill_matrix(v, bc, N);
      const auto ks = hill_basis(bc, N);
      auto phi = [&](int k, double x) {
        if (dir) return std::sqrt(2 / pi) * std::sin(k * x);
        return (k == 0 ? 1 / std::sqrt(pi) : std::sqrt(2 / pi)) * std::cos(k * x);
      };
      for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = 0; j < ks.size(); ++j) {
          cplx want = quad([&](double x) { return phi(ks[i], x) * eval(v.coeffs, x) * phi(ks[j], x); });
          if (i == j) want += double(ks[i]) * ks[i];
          cmp(M(i, j), want, "Hill " + bc.name());
        }
    }
    const DiracPotential dp{draw(), draw()};
    for (auto bc : {BoundaryCondition::per_plus(), BoundaryCondition::per_minus()}) {
      const Matrix M = build_dirac_matrix(dp, bc, N);
      const auto ks = dirac_basis(bc, N);
      const std::size_t m = ks.size();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const int k = ks[i], l = ks[j];
          cmp(M(i, m + j), quad([&](double x) { return std::exp(cplx(0, (k + l) * x)) * eval(dp.p, x) / pi; }),
              "Dirac " + bc.name() + " P");
          cmp(M(m + i, j), quad([&](double x) { return std::exp(cplx(0, -(k + l) * x)) * eval(dp.q, x) / pi; }),
              "Dirac " + bc.name() + " Q");
          cmp(M(i, j), i == j ? cplx(k) : cplx(0), "Dirac diagonal");
          cmp(M(m + i, m + j), i == j ? cplx(k) : cplx(0), "Dirac diagonal");
        }
    }
  }
  log.note("max entry error " + g(worst));
  return log.done();
}

// ---- 12 --------------------------------------------------------------------

Outcome hand_checks() {
  Log log;
  int count = 0;
  auto eq = [&](cplx got, cplx want, const std::string& tag) {
    ++count;
    if (std::abs(got - want) > 1e-14 * std::max(1.0, std::abs(want))) {
      std::ostringstream os;
      os.precision(17);
      os << tag << " = " << got << ", want " << want;
      log.fail(os.str());
    }
  };
  const auto tw = predict(make_two_exp(1.0, 4.0), 2);
  eq(tw.beta.minus(), 0.25, "two-exp(1,4) B-(2)");
  eq(tw.beta.plus(), 4.0, "two-exp(1,4) B+(2)");
  eq(tw.gap_pred, 2.0, "two-exp(1,4) gap(2)");
  eq(predict(make_two_exp(1.0, 1.0), 2).midpoint_pred.value_or(cplx(NAN)), -0.25, "two-exp(1,1) midpoint(2)");
  eq(predict(make_gen_two_exp(1.0, 1.0, 1, 2), 2).gap_pred, 1.0, "gen-two-exp(1,1,1,2) gap(2)");
  eq(predict_mathieu_refined(1.0, 1.0, 2).value, 0.484375, "refined Mathieu (1,1,2)");
  eq(predict_levy_keller(0.4, 1), 0.8, "Levy-Keller (0.4,1)");
  eq(predict_levy_keller(4.0, 2), 8.0, "Levy-Keller (4,2)");
  const auto dz = predict(make_dirac_two_exp(1.0, 2.0, 3.0, 4.0), 4);
  eq(dz.beta.minus(), 0.0, "dirac-two-exp B-(4)");
  eq(dz.beta.plus(), 0.0, "dirac-two-exp B+(4)");
  const int n = 5;
  eq(beta_proxy(make_smooth_jump(0, 2.0, 16), n).plus(), (1 / pi) * 2.0 / cplx(0, 2.0 * n), "smooth-jump B+(5)");
  const auto br = resolve_branch(cplx(1), cplx(-1));
  eq(br.sqrt_plus.value(), cplx(0, 1), "branch (1,-1) sqrt B+");
  if (br.resolved) log.fail("branch (1,-1) reported resolved");
  log.note(std::to_string(count) + " values");
  return log.done();
}

}  // namespace

int main() {
  bool all = true;
  int index = 0;
  auto report = [&](const char* name, const Outcome& o) {
    ++index;
    all = all && o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  };
  auto guarded = [](const std::function<Outcome()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  report("free-operator exactness", guarded(free_exactness));
  report("backend cross-agreement", guarded(backend_agreement));
  report("isospectrality and shift invariance", guarded(isospectrality));
  report("self-adjoint ordering", guarded(self_adjoint));

  FamilyRuns runs;
  const RunOptions o = run_options();
  runs.mathieu = run_family(make_two_exp(1.0, 1.0), {4, 5, 6}, o);
  runs.two_exp = run_family(make_two_exp(1.0, 4.0), {4, 5, 6, 7}, o);
  runs.dirac_even = run_family(make_dirac_two_exp(1.0, 1.0, 1.0, 1.0), {-10, -8, -6, -4, -2, 2, 4, 6, 8, 10}, o);
  runs.dirac_odd = run_family(make_dirac_two_exp(1.0, 1.0, 1.0, 1.0), {3, 5, 7}, o);

  report("refined Mathieu gap window", guarded([&] { return harrell_avron_simon(runs.mathieu); }));
  report("small-coefficient limit", guarded(levy_keller));
  report("non-self-adjoint midpoint deviation", guarded([&] { return midpoint_deviation(runs.two_exp); }));
  report("Dirac even-gap vanishing", guarded([&] { return dirac_even_gaps(runs.dirac_even, runs.dirac_odd); }));
  report("enclosure", guarded([&] {
           return proxy_bounds(runs, [](const ReportRow& r) -> const BoundCheck& { return r.enclosure; }, "enclosure");
         }));
  report("gap bound (eta = 0.3)", guarded([&] {
           return proxy_bounds(runs, [](const ReportRow& r) -> const BoundCheck& { return r.gap_bound; }, "gap bound");
         }));
  report("matrix-assembly oracle", guarded(assembly_oracle));
  report("prediction hand checks", guarded(hand_checks));
  return all ? 0 : 1;
}
