#include "hillgap/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "hillgap/complex_t.hpp"
#include "hillgap/dd.hpp"

namespace hillgap {

const char* precision_name(Precision p) { return p == Precision::Double ? "double" : "dd"; }

double default_tolerance(Precision p) { return p == Precision::Double ? 1e-15 : 1e-31; }

namespace {

constexpr double kPi = std::numbers::pi;

int taylor_order(Precision p) { return p == Precision::Double ? 28 : 48; }

template <class T>
struct Term {
  int k;
  Cx<T> c;
};

template <class T>
std::vector<Term<T>> terms_of(const std::map<int, cplx>& m) {
  std::vector<Term<T>> out;
  for (const auto& [k, c] : m)
    if (c != 0.0) out.push_back({k, Cx<T>(c)});
  return out;
}

// Taylor coefficients of sum_k c_k e^{2ik(x0+s)} in s, up to order K.
template <class T>
void potential_taylor(const std::vector<Term<T>>& terms, const T& x0, const std::vector<T>& inv,
                      std::vector<Cx<T>>& out) {
  const int K = static_cast<int>(out.size()) - 1;
  std::fill(out.begin(), out.end(), Cx<T>());
  for (const auto& term : terms) {
    Cx<T> s = term.c * expi(T(2.0 * term.k) * x0);
    out[0] += s;
    if (term.k == 0) continue;
    const T two_k = T(2.0 * term.k);
    for (int i = 1; i <= K; ++i) {
      s = imul(s) * (two_k * inv[i]);
      out[i] += s;
    }
  }
}

template <class T>
double max_mag(const std::array<Cx<T>, 4>& a) {
  double m = 0.0;
  for (const auto& z : a) m = std::max(m, mag(z));
  return m;
}

template <class T>
struct Mono {
  std::array<Cx<T>, 4> m;
  std::array<Cx<T>, 4> dm;
  int steps = 0;
};

// Fundamental matrix u' = A(x) u with A = [[0,1],[v-lambda,0]] (Hill) or
// [[-i lambda, iP],[-iQ, i lambda]] (Dirac), and W = du/dlambda from
// W' = A W + (dA/dlambda) u. One-step Taylor method of order K with the
// coefficients generated by the Cauchy-product recurrences.
template <class T>
Mono<T> integrate_T(const Potential& v, const Cx<T>& lam, double tol, int K, bool deriv) {
  using A4 = std::array<Cx<T>, 4>;
  const bool dirac = kind_of(v) == OperatorKind::Dirac;
  std::vector<Term<T>> vt, pt, qt;
  if (dirac) {
    const auto& d = std::get<DiracPotential>(v);
    pt = terms_of<T>(d.p);
    qt = terms_of<T>(d.q);
  } else {
    vt = terms_of<T>(std::get<HillPotential>(v).coeffs);
  }

  std::vector<T> inv(K + 2);
  for (int i = 1; i <= K + 1; ++i) inv[i] = T(1.0) / T(double(i));

  std::vector<Cx<T>> V(K + 1), P(K + 1), Q(K + 1);
  std::vector<A4> U(K + 1), W(K + 1);

  const T pi = real_traits<T>::pi();
  const Cx<T> ilam = imul(lam);
  T x = 0.0;
  A4 u{Cx<T>(T(1.0)), Cx<T>(), Cx<T>(), Cx<T>(T(1.0))};
  A4 w{};
  Mono<T> out;

  for (;;) {
    const T remaining = pi - x;
    if (to_double(remaining) <= 0.0) break;

    if (dirac) {
      potential_taylor(pt, x, inv, P);
      potential_taylor(qt, x, inv, Q);
    } else {
      potential_taylor(vt, x, inv, V);
    }
    U[0] = u;
    W[0] = w;

    for (int j = 0; j < K; ++j) {
      const T s = inv[j + 1];
      for (int c = 0; c < 2; ++c) {
        if (!dirac) {
          Cx<T> acc = -(lam * U[j][c]);
          for (int i = 0; i <= j; ++i) acc += V[i] * U[j - i][c];
          U[j + 1][c] = U[j][2 + c] * s;
          U[j + 1][2 + c] = acc * s;
          if (deriv) {
            Cx<T> wacc = -(lam * W[j][c]) - U[j][c];
            for (int i = 0; i <= j; ++i) wacc += V[i] * W[j - i][c];
            W[j + 1][c] = W[j][2 + c] * s;
            W[j + 1][2 + c] = wacc * s;
          }
        } else {
          Cx<T> p_acc, q_acc;
          for (int i = 0; i <= j; ++i) {
            p_acc += P[i] * U[j - i][2 + c];
            q_acc += Q[i] * U[j - i][c];
          }
          U[j + 1][c] = (imul(p_acc) - ilam * U[j][c]) * s;
          U[j + 1][2 + c] = (ilam * U[j][2 + c] - imul(q_acc)) * s;
          if (deriv) {
            Cx<T> wp, wq;
            for (int i = 0; i <= j; ++i) {
              wp += P[i] * W[j - i][2 + c];
              wq += Q[i] * W[j - i][c];
            }
            W[j + 1][c] = (imul(wp) - ilam * W[j][c] - imul(U[j][c])) * s;
            W[j + 1][2 + c] = (ilam * W[j][2 + c] - imul(wq) + imul(U[j][2 + c])) * s;
          }
        }
      }
    }

    // Step from the last two Taylor terms.
    const double su = std::max(1.0, max_mag(u));
    const double sw = std::max(1.0, max_mag(w));
    double h = std::numeric_limits<double>::infinity();
    for (int j : {K - 1, K}) {
      const double nu = max_mag(U[j]);
      if (nu > 0.0) h = std::min(h, std::pow(tol * su / nu, 1.0 / j));
      if (deriv) {
        const double nw = max_mag(W[j]);
        if (nw > 0.0) h = std::min(h, std::pow(tol * sw / nw, 1.0 / j));
      }
    }
    h *= 0.8;
    const bool last = h >= to_double(remaining);
    if (!last && !(h > 1e-13 * kPi)) {
      std::ostringstream os;
      os.precision(17);
      os << "step size underflow at x = " << to_double(x) << " (h = " << h << ")";
      throw ConvergenceError(os.str());
    }
    const T hs = last ? remaining : T(h);

    u = U[K];
    for (int j = K - 1; j >= 0; --j)
      for (int e = 0; e < 4; ++e) u[e] = u[e] * hs + U[j][e];
    if (deriv) {
      w = W[K];
      for (int j = K - 1; j >= 0; --j)
        for (int e = 0; e < 4; ++e) w[e] = w[e] * hs + W[j][e];
    }
    x = last ? pi : x + hs;
    ++out.steps;
    if (last) break;
  }
  out.m = u;
  out.dm = w;
  return out;
}

template <class T>
Cx<T> floquet_rho(double t) {
  if (t == 0.0) return Cx<T>(T(1.0));
  if (std::abs(std::abs(t) - kPi) < 1e-15) return Cx<T>(T(-1.0));
  return expi(T(t));
}

template <class T>
CharValue characteristic_T(const Potential& v, const BoundaryCondition& bc, cplx center, cplx offset,
                           double tol, int K, bool deriv) {
  const OperatorKind kind = kind_of(v);
  if (kind == OperatorKind::Dirac && bc.type == BoundaryCondition::Type::Neumann)
    throw PreconditionError("Neumann conditions are defined for the Hill operator only");
  const Cx<T> lam = Cx<T>(center) + Cx<T>(offset);
  const Mono<T> M = integrate_T<T>(v, lam, tol, K, deriv);
  const auto& m = M.m;
  const auto& d = M.dm;
  Cx<T> f, df;
  if (auto t = bc.floquet_angle()) {
    const Cx<T> rho = floquet_rho<T>(*t);
    const Cx<T> a = m[0] - rho, e = m[3] - rho;
    const Cx<T> nr = -conj(rho);
    f = nr * (a * e - m[1] * m[2]);
    if (deriv) df = nr * (d[0] * e + a * d[3] - d[1] * m[2] - m[1] * d[2]);
  } else if (kind == OperatorKind::Hill) {
    const bool dir = bc.type == BoundaryCondition::Type::Dirichlet;
    f = dir ? m[1] : m[2];
    df = dir ? d[1] : d[2];
  } else {
    f = (m[0] + m[1]) - (m[2] + m[3]);
    df = (d[0] + d[1]) - (d[2] + d[3]);
  }
  return {f.to_std(), df.to_std()};
}

CharValue eval_char(const Potential& v, const BoundaryCondition& bc, cplx center, cplx offset,
                    Precision p, double tol, bool deriv = true) {
  if (tol <= 0.0) tol = default_tolerance(p);
  if (p == Precision::Double)
    return characteristic_T<double>(v, bc, center, offset, tol, taylor_order(p), deriv);
  return characteristic_T<dd_real>(v, bc, center, offset, tol, taylor_order(p), deriv);
}

// ---- Newton with deflation ----------------------------------------------

struct NewtonResult {
  bool ok = false;
  cplx z;
  int iterations = 0;
};

using Evaluator = std::function<CharValue(cplx)>;

NewtonResult newton_deflated(const Evaluator& eval, cplx z, const std::vector<cplx>& known,
                             const std::function<double(cplx)>& step_tol) {
  NewtonResult res;
  double prev = -1.0, prev_ratio = -1.0;
  for (int it = 0; it < 50; ++it) {
    res.iterations = it + 1;
    const CharValue cv = eval(z);
    if (cv.f == 0.0) return {true, z, it + 1};
    cplx g = cv.df / cv.f;
    for (cplx r : known) {
      if (z == r) return {true, z, it + 1};
      g -= 1.0 / (z - r);
    }
    cplx step = 1.0 / g;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
      if (prev >= 0.0 && prev <= 1e3 * step_tol(z)) return {true, z, it + 1};
      return res;
    }
    double len = std::abs(step);
    // Linear convergence with ratio 1/2 marks a (near) double root.
    if (prev > 0.0) {
      double ratio = len / prev;
      if (ratio >= 0.4 && ratio <= 0.6 && prev_ratio >= 0.4 && prev_ratio <= 0.6) {
        step *= 2.0;
        len *= 2.0;
        prev_ratio = -1.0;
      } else {
        prev_ratio = ratio;
      }
    }
    const double thr = step_tol(z);
    if (len <= thr) return {true, z - step, it + 1};
    if (prev > 0.0 && len >= prev && len <= 1e3 * thr) return {true, z, it + 1};
    z -= step;
    prev = len;
  }
  return res;
}

struct RootSearch {
  std::vector<cplx> roots;
  int attempts = 0;
};

// Collects `wanted` roots accepted by `inside`; near-duplicates of known
// roots are kept only if no seed yields anything else.
RootSearch collect_roots(const Evaluator& eval, const std::vector<cplx>& seeds, int wanted,
                         const std::function<bool(cplx)>& inside,
                         const std::function<double(cplx)>& step_tol) {
  RootSearch rs;
  for (int pass = 0; pass < 2 && static_cast<int>(rs.roots.size()) < wanted; ++pass) {
    for (cplx s : seeds) {
      if (static_cast<int>(rs.roots.size()) >= wanted) break;
      ++rs.attempts;
      NewtonResult nr = newton_deflated(eval, s, rs.roots, step_tol);
      if (!nr.ok || !inside(nr.z)) continue;
      bool dup = false;
      for (cplx r : rs.roots)
        if (std::abs(nr.z - r) <= 1e3 * step_tol(r)) dup = true;
      if (dup && pass == 0) continue;
      rs.roots.push_back(nr.z);
    }
  }
  return rs;
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(15);
  os << z;
  return os.str();
}

}  // namespace

FundamentalData integrate_fundamental(const Potential& v, cplx lambda, Precision precision,
                                      double tol) {
  if (tol < 0.0 || !std::isfinite(tol)) throw PreconditionError("integrator tolerance must be positive");
  if (tol == 0.0) tol = default_tolerance(precision);
  FundamentalData fd;
  fd.lambda = lambda;
  auto fill = [&](const auto& M) {
    for (int e = 0; e < 4; ++e) {
      fd.m[e] = M.m[e].to_std();
      fd.dm[e] = M.dm[e].to_std();
    }
    fd.steps = M.steps;
  };
  if (precision == Precision::Double)
    fill(integrate_T<double>(v, Cx<double>(lambda), tol, taylor_order(precision), true));
  else
    fill(integrate_T<dd_real>(v, Cx<dd_real>(lambda), tol, taylor_order(precision), true));
  return fd;
}

cplx discriminant(const Potential& v, cplx lambda, Precision precision, double tol) {
  return integrate_fundamental(v, lambda, precision, tol).trace();
}

CharValue characteristic(const Potential& v, const BoundaryCondition& bc, cplx center, cplx offset,
                         Precision precision, double tol) {
  if (tol < 0.0) throw PreconditionError("integrator tolerance must be positive");
  return eval_char(v, bc, center, offset, precision, tol);
}

int count_roots(const Potential& v, const BoundaryCondition& bc, cplx center, double radius,
                double* used_radius) {
  if (!(radius > 0.0)) throw PreconditionError("contour radius must be positive");
  for (double scale : {1.0, 1.05, 0.95}) {
    const double r = radius * scale;
    bool near_zero = false;
    for (int N = 64; N <= 1024 && !near_zero; N *= 2) {
      cplx sum = 0.0;
      double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0;
      for (int j = 0; j < N; ++j) {
        const cplx e = std::polar(r, 2.0 * kPi * j / N);
        const CharValue cv = eval_char(v, bc, center, e, Precision::Double, 0.0);
        fmin = std::min(fmin, std::abs(cv.f));
        fmax = std::max(fmax, std::abs(cv.f));
        sum += cv.df / cv.f * e;
      }
      if (fmin < 1e-13 * fmax || fmin == 0.0) {
        near_zero = true;
        break;
      }
      const cplx s = sum / double(N);
      const double n = std::round(s.real());
      if (std::abs(s - n) < 0.05) {
        if (used_radius) *used_radius = r;
        return static_cast<int>(n);
      }
    }
  }
  std::ostringstream os;
  os << "argument principle did not settle on |lambda - " << fmt(center) << "| = " << radius;
  throw ConvergenceError(os.str());
}

SolveResult solve_bc(const Potential& v, const BoundaryCondition& bc, cplx lambda0,
                     const SolveOptions& opts) {
  const OperatorKind kind = kind_of(v);
  if (kind == OperatorKind::Dirac && bc.type == BoundaryCondition::Type::Neumann)
    throw PreconditionError("Neumann conditions are defined for the Hill operator only");
  const double tol = opts.tol > 0.0 ? opts.tol : default_tolerance(opts.precision);
  double r1 = opts.first_radius;
  if (r1 <= 0.0) r1 = kind == OperatorKind::Hill ? std::sqrt(std::abs(lambda0)) / 4.0 : 0.5;

  SolveResult out;
  const auto ladder = localization_ladder(kind, bc, lambda0, r1);
  bool found = false;
  std::ostringstream tried;
  for (const auto& rung : ladder) {
    double used = rung.radius;
    const int cnt = count_roots(v, bc, rung.center, rung.radius, &used);
    const int expected =
        static_cast<int>(free_eigenvalues(kind, bc, rung.center, used).size());
    tried << " r=" << used << ": " << cnt << " vs " << expected << ";";
    if (cnt == expected) {
      out.disc = {rung.center, used, expected};
      out.contour_count = cnt;
      found = true;
      break;
    }
  }
  if (!found)
    throw StructuralError("argument-principle count mismatch near " + fmt(lambda0) + " for " +
                          bc.name() + ":" + tried.str());

  const double eps = opts.precision == Precision::Double ? real_traits<double>::epsilon()
                                                         : real_traits<dd_real>::epsilon();
  const double rtol = opts.newton_rtol > 0.0 ? opts.newton_rtol : 4.0 * eps;
  const double lam_scale = 1.0 + std::abs(lambda0);
  auto step_tol = [&](cplx z) {
    return std::max(rtol * (lam_scale + std::abs(z)), 2.0 * real_traits<double>::epsilon() * std::abs(z));
  };
  Evaluator eval = [&](cplx z) { return eval_char(v, bc, lambda0, z, opts.precision, tol); };
  auto inside = [&](cplx z) { return in_disc(lambda0 + z, out.disc.center, out.disc.radius); };

  const double r = out.disc.radius;
  std::vector<cplx> seeds;
  for (cplx s : opts.seeds) seeds.push_back(s - lambda0);
  if (opts.predicted_gap) {
    seeds.push_back(opts.predicted_center_offset + 0.5 * *opts.predicted_gap);
    seeds.push_back(opts.predicted_center_offset - 0.5 * *opts.predicted_gap);
  }
  seeds.push_back(r / 10.0);
  seeds.push_back(-r / 10.0);
  for (double frac : {1.0 / 3.0, 2.0 / 3.0})
    for (int j = 0; j < 8; ++j) seeds.push_back(std::polar(frac * r, 2.0 * kPi * (j + 0.5) / 8));

  RootSearch rs = collect_roots(eval, seeds, out.contour_count, inside, step_tol);
  if (static_cast<int>(rs.roots.size()) != out.contour_count) {
    std::ostringstream os;
    os << "Newton found " << rs.roots.size() << " of " << out.contour_count << " roots near "
       << fmt(lambda0) << " for " << bc.name() << " after " << rs.attempts
       << " starts (50 iterations each)";
    throw ConvergenceError(os.str());
  }
  std::sort(rs.roots.begin(), rs.roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (cplx z : rs.roots) out.roots.push_back({lambda0 + z, z});
  return out;
}

// ---- window search ---------------------------------------------------------

namespace {

double arg_ratio(cplx b, cplx a) { return std::arg(b / a); }

struct Tracker {
  std::function<cplx(cplx)> F;
  double fscale = 0.0;
  int evals = 0;

  cplx f(cplx z) {
    ++evals;
    cplx val = F(z);
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
      throw ConvergenceError("characteristic function overflowed on the search window");
    return val;
  }

  // Accumulated argument change of F along the segment [a, b].
  double segment(cplx a, cplx b, cplx fa, cplx fb, int depth) {
    const cplx m = 0.5 * (a + b);
    const cplx fm = f(m);
    const double d1 = arg_ratio(fm, fa), d2 = arg_ratio(fb, fm), d = arg_ratio(fb, fa);
    const bool smooth = std::abs(d1) < kPi / 4 && std::abs(d2) < kPi / 4 &&
                        std::abs(d1 + d2 - d) < 1e-3;
    if (smooth) return d;
    if (depth > 40) throw StructuralError("F nearly vanishes on the search window boundary");
    return segment(a, m, fa, fm, depth + 1) + segment(m, b, fm, fb, depth + 1);
  }
};

}  // namespace

int count_roots_in_window(const Potential& v, const BoundaryCondition& bc, const Window& w) {
  Tracker tr;
  tr.F = [&](cplx z) { return eval_char(v, bc, 0.0, z, Precision::Double, 0.0, false).f; };
  const cplx corners[5] = {{w.re_lo, w.im_lo}, {w.re_hi, w.im_lo}, {w.re_hi, w.im_hi},
                           {w.re_lo, w.im_hi}, {w.re_lo, w.im_lo}};
  double total = 0.0;
  double fmax = 0.0;
  std::vector<std::pair<cplx, cplx>> pts;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[e + 1];
    const int pieces = std::max(8, static_cast<int>(std::ceil(std::abs(b - a) / 0.5)));
    for (int j = 0; j < pieces; ++j) {
      const cplx z = a + (b - a) * (double(j) / pieces);
      pts.push_back({z, tr.f(z)});
      fmax = std::max(fmax, std::abs(pts.back().second));
    }
  }
  pts.push_back(pts.front());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (std::abs(pts[i].second) < 1e-13 * fmax)
      throw StructuralError("F nearly vanishes on the search window boundary");
    total += tr.segment(pts[i].first, pts[i + 1].first, pts[i].second, pts[i + 1].second, 0);
  }
  const double n = total / (2.0 * kPi);
  if (std::abs(n - std::round(n)) > 1e-6)
    throw ConvergenceError("winding number is not an integer on the search window");
  return static_cast<int>(std::lround(n));
}

namespace {

std::vector<double> free_reals(OperatorKind kind, const BoundaryCondition& bc, int count) {
  double R = 16.0;
  for (;;) {
    std::vector<double> vals;
    for (cplx z : free_eigenvalues(kind, bc, 0.0, R)) vals.push_back(z.real());
    if (static_cast<int>(vals.size()) >= count + 4) return vals;
    R *= 2.0;
  }
}

}  // namespace

Window search_window(const Potential& v, const BoundaryCondition& bc, int count) {
  if (count < 1) throw PreconditionError("eigenvalue count must be positive");
  const OperatorKind kind = kind_of(v);
  const double S = std::visit([](const auto& p) { return p.l1_norm(); }, v);
  std::vector<double> vals = free_reals(kind, bc, count);
  if (kind == OperatorKind::Dirac)
    for (double& x : vals) x = std::abs(x);
  std::sort(vals.begin(), vals.end());
  const double edge = vals[count - 1];
  double next = edge;
  for (double x : vals)
    if (x > edge + 1e-9) {
      next = x;
      break;
    }
  const double X = 0.5 * (edge + next);
  if (kind == OperatorKind::Hill) return {-S - 1.0, X, -(S + 1.0), S + 1.0};
  return {-X, X, -(S + 1.0), S + 1.0};
}

WindowSpectrum lowest_eigenvalues(const Potential& v, const BoundaryCondition& bc, int count,
                                  Precision precision) {
  if (!bc.is_floquet() && bc.type != BoundaryCondition::Type::Dirichlet &&
      bc.type != BoundaryCondition::Type::Neumann)
    throw PreconditionError("unsupported boundary condition");
  const OperatorKind kind = kind_of(v);
  Window w = search_window(v, bc, count);

  int n_in = -1;
  const double base = w.re_hi;
  for (double nudge : {0.0, 0.15, -0.15, 0.3}) {
    Window t = w;
    const double shift = nudge * std::max(1.0, std::sqrt(std::abs(base)));
    t.re_hi = base + shift;
    if (kind == OperatorKind::Dirac) t.re_lo = -t.re_hi;
    try {
      n_in = count_roots_in_window(v, bc, t);
      w = t;
      break;
    } catch (const StructuralError&) {
    }
  }
  if (n_in < 0) throw StructuralError("F vanishes on every trial search window boundary");

  const double tol = default_tolerance(precision);
  Evaluator eval = [&](cplx z) { return eval_char(v, bc, 0.0, z, precision, tol); };
  const double eps = precision == Precision::Double ? real_traits<double>::epsilon()
                                                    : real_traits<dd_real>::epsilon();
  auto step_tol = [&](cplx z) {
    return std::max(4.0 * eps * (1.0 + std::abs(z)), 2.0 * real_traits<double>::epsilon() * std::abs(z));
  };
  auto inside = [&](cplx z) {
    return z.real() >= w.re_lo && z.real() <= w.re_hi && z.imag() >= w.im_lo && z.imag() <= w.im_hi;
  };

  std::vector<cplx> seeds;
  std::vector<double> fr;
  for (cplx z : free_eigenvalues(kind, bc, 0.0, std::max(std::abs(w.re_lo), std::abs(w.re_hi))))
    if (inside(z)) fr.push_back(z.real());
  for (double f : fr) {
    const double d = kind == OperatorKind::Hill ? 0.1 * (1.0 + std::sqrt(std::abs(f))) : 0.1;
    seeds.push_back(f - d);
    seeds.push_back(f + d);
    seeds.push_back(f);
  }
  const int cols = 40;
  for (double im : {0.0, 0.5, -0.5})
    for (int j = 0; j <= cols; ++j)
      seeds.push_back({w.re_lo + (w.re_hi - w.re_lo) * j / cols, im * w.im_hi});

  RootSearch rs = collect_roots(eval, seeds, n_in, inside, step_tol);
  if (static_cast<int>(rs.roots.size()) != n_in) {
    std::ostringstream os;
    os << "Newton found " << rs.roots.size() << " of " << n_in << " eigenvalues in the search window";
    throw ConvergenceError(os.str());
  }
  if (kind == OperatorKind::Hill)
    std::sort(rs.roots.begin(), rs.roots.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
  else
    std::sort(rs.roots.begin(), rs.roots.end(), [](cplx a, cplx b) {
      return std::abs(a.real()) != std::abs(b.real()) ? std::abs(a.real()) < std::abs(b.real())
                                                      : a.real() < b.real();
    });
  return {w, rs.roots};
}

}  // namespace hillgap
