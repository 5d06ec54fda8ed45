#include "hillgap/triangles.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hillgap {

namespace {

void check_inside(const char* what, int n, cplx z, double radius) {
  if (!in_disc(z, 0.0, radius)) {
    std::ostringstream os;
    os.precision(15);
    os << what << " for n = " << n << " lies at offset " << z << ", outside radius " << radius;
    throw PreconditionError(os.str());
  }
}

}  // namespace

SpectralTriangle build_triangle(int n, OperatorKind kind, const Eigenvalue& e1, const Eigenvalue& e2,
                                const Eigenvalue& mu, std::optional<Eigenvalue> nu, double radius) {
  if (radius <= 0.0) radius = lemma_radius(kind, n);
  check_inside("periodic eigenvalue", n, e1.offset, radius);
  check_inside("periodic eigenvalue", n, e2.offset, radius);
  check_inside("Dirichlet eigenvalue", n, mu.offset, radius);
  if (nu) check_inside("Neumann eigenvalue", n, nu->offset, radius);

  SpectralTriangle t;
  t.n = n;
  t.kind = kind;
  t.lambda0 = reference_point(kind, n);
  const auto [lm, lp] = label_pair(e1, e2);
  t.z_minus = lm.offset;
  t.z_plus = lp.offset;
  t.z_mu = mu.offset;
  t.lambda_minus = t.lambda0 + t.z_minus;
  t.lambda_plus = t.lambda0 + t.z_plus;
  t.mu = t.lambda0 + t.z_mu;
  if (nu) {
    t.z_nu = nu->offset;
    t.nu = t.lambda0 + nu->offset;
  }
  t.gap = t.z_plus - t.z_minus;
  t.deviation_plus = t.z_mu - t.z_plus;
  t.deviation_minus = t.z_mu - t.z_minus;
  t.z_star = 0.5 * (t.z_plus + t.z_minus);
  t.midpoint_dev = t.z_mu - t.z_star;
  return t;
}

SpectralTriangle build_triangle(int n, OperatorKind kind, cplx e1, cplx e2, cplx mu,
                                std::optional<cplx> nu, double radius) {
  const cplx l0 = reference_point(kind, n);
  std::optional<Eigenvalue> enu;
  if (nu) enu = Eigenvalue{*nu, *nu - l0};
  return build_triangle(n, kind, {e1, e1 - l0}, {e2, e2 - l0}, {mu, mu - l0}, enu, radius);
}

Eigenvalue recenter(const Eigenvalue& e, cplx center, cplx lambda0) {
  return {e.value, (center - lambda0) + e.offset};
}

std::optional<double> compute_t_n(const BetaProxy& proxy) {
  const bool zm = proxy.b_minus.is_zero(), zp = proxy.b_plus.is_zero();
  if (zm && zp) return std::nullopt;
  if (zm || zp) return std::numeric_limits<double>::infinity();
  return std::exp(std::abs(proxy.b_minus.log_abs() - proxy.b_plus.log_abs()));
}

std::optional<double> compute_r_n(const SpectralTriangle& tri, std::string* reason) {
  if (tri.gap == 0.0) {
    if (reason) *reason = "gap is zero";
    return std::nullopt;
  }
  return std::abs(tri.deviation_plus) / std::abs(tri.gap);
}

double gap_bound_center(double t) {
  if (std::isinf(t)) return 0.0;
  return 2.0 * std::sqrt(t) / (1.0 + t);
}

std::optional<double> window_sup(const std::vector<std::optional<double>>& values) {
  std::optional<double> best;
  for (const auto& v : values)
    if (v && (!best || *v > *best)) best = v;
  return best;
}

}  // namespace hillgap
