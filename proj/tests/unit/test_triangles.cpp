#include <limits>
#include <random>

#include "doctest.h"
#include "hillgap/galerkin.hpp"
#include "hillgap/triangles.hpp"
#include "hillgap/verify.hpp"

using namespace hillgap;

namespace {

BetaProxy proxy(cplx bm, cplx bp) {
  BetaProxy p;
  p.b_minus = LogComplex::from(bm);
  p.b_plus = LogComplex::from(bp);
  return p;
}

}  // namespace

TEST_CASE("free triangle collapses") {
  const auto t = build_triangle(3, OperatorKind::Hill, 9.0, 9.0, 9.0);
  CHECK(t.gap == 0.0);
  CHECK(t.deviation_plus == 0.0);
  CHECK(t.deviation_minus == 0.0);
  CHECK(t.lambda0 == 9.0);
}

TEST_CASE("derived fields by arithmetic") {
  const auto t = build_triangle(2, OperatorKind::Hill, 4.1, 3.9, 4.05);
  CHECK(t.lambda_minus.real() == doctest::Approx(3.9));
  CHECK(t.gap.real() == doctest::Approx(0.2));
  CHECK(t.deviation_plus.real() == doctest::Approx(-0.05));
  CHECK(t.midpoint_dev.real() == doctest::Approx(0.05));
  CHECK(*compute_r_n(t) == doctest::Approx(0.25));
}

TEST_CASE("derived-field identities on random triangles") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + k % 5;
    const OperatorKind kind = k % 2 ? OperatorKind::Dirac : OperatorKind::Hill;
    const cplx l0 = reference_point(kind, n);
    const cplx a = l0 + cplx(u(rng), u(rng)), b = l0 + cplx(u(rng), u(rng)), m = l0 + cplx(u(rng), u(rng));
    const auto t = build_triangle(n, kind, a, b, m);
    const auto s = build_triangle(n, kind, b, a, m);
    CHECK(t.lambda_minus == s.lambda_minus);
    CHECK(t.lambda_plus == s.lambda_plus);
    CHECK(std::abs(t.gap - (t.lambda_plus - t.lambda_minus)) < 1e-12);
    CHECK(std::abs(t.midpoint_dev - (t.deviation_plus + 0.5 * t.gap)) < 1e-12);
    CHECK(std::abs(t.z_star - (0.5 * (t.lambda_plus + t.lambda_minus) - l0)) < 1e-12);
  }
}

TEST_CASE("vertices outside the disc are rejected") {
  CHECK_THROWS_AS(build_triangle(2, OperatorKind::Hill, 4.0, 4.0, 7.0), PreconditionError);
  CHECK_THROWS_AS(build_triangle(2, OperatorKind::Dirac, 2.0, 2.0, 2.0, cplx(3.0)), PreconditionError);
  CHECK_NOTHROW(build_triangle(2, OperatorKind::Hill, 4.0, 4.0, 7.0, std::nullopt, 5.0));
}

TEST_CASE("recenter shifts offsets") {
  const Eigenvalue e{cplx(16.5, 0), cplx(0.5, 0)};
  const Eigenvalue r = recenter(e, 16.0, 16.0);
  CHECK(r.offset == cplx(0.5, 0));
  const Eigenvalue r2 = recenter({cplx(16.5, 0), cplx(0.25, 0)}, 16.25, 16.0);
  CHECK(r2.offset == cplx(0.5, 0));
}

TEST_CASE("t_n") {
  CHECK(*compute_t_n(proxy(3.0, 1.0)) == doctest::Approx(3.0));
  CHECK(*compute_t_n(proxy(cplx(0, 1), cplx(0, -1))) == doctest::Approx(1.0));
  CHECK(*compute_t_n(proxy(0.0, 2.0)) == std::numeric_limits<double>::infinity());
  CHECK_FALSE(compute_t_n(proxy(0.0, 0.0)).has_value());
}

TEST_CASE("r_n and the gap bound centre") {
  const auto t = build_triangle(4, OperatorKind::Hill, cplx(16, -1), cplx(16, 1), cplx(17, 1), std::nullopt, 5.0);
  CHECK(*compute_r_n(t) == doctest::Approx(0.5));
  std::string why;
  CHECK_FALSE(compute_r_n(build_triangle(3, OperatorKind::Hill, 9.0, 9.0, 9.0), &why).has_value());
  CHECK(why == "gap is zero");
  CHECK(gap_bound_center(1.0) == 1.0);
  CHECK(gap_bound_center(std::numeric_limits<double>::infinity()) == 0.0);
  for (double t : {1.0, 1.5, 4.0, 100.0, 1e12}) CHECK(gap_bound_center(t) <= 1.0);
}

TEST_CASE("window supremum skips absent values") {
  CHECK(*window_sup({0.2, std::nullopt, 0.7, 0.1}) == 0.7);
  CHECK_FALSE(window_sup({std::nullopt}).has_value());
}

TEST_CASE("Mathieu n = 1 interlacing") {
  HillPotential v{{{-1, 1.0}, {1, 1.0}}};
  const auto per = eigs_near(v, BoundaryCondition::per_minus(), 1.0, default_plan(OperatorKind::Hill, BoundaryCondition::per_minus(), 1));
  const auto dir = eigs_near(v, BoundaryCondition::dirichlet(), 1.0, default_plan(OperatorKind::Hill, BoundaryCondition::dirichlet(), 1));
  REQUIRE(per.eigenvalues.size() == 2);
  REQUIRE(dir.eigenvalues.size() == 1);
  const auto t = build_triangle(1, OperatorKind::Hill, per.eigenvalues[0].value, per.eigenvalues[1].value,
                                dir.eigenvalues[0].value, std::nullopt, 2.0);
  // For an even potential mu_1 coincides with lambda_1^- up to rounding.
  CHECK(std::abs(t.mu - t.lambda_minus) < 1e-12);
  CHECK(self_adjoint_ordering(t));
}
