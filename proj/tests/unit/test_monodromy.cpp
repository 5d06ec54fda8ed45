#include <numbers>
#include <random>

#include "doctest.h"
#include "hillgap/galerkin.hpp"
#include "hillgap/monodromy.hpp"

using namespace hillgap;
using std::numbers::pi;

TEST_CASE("free Hill fundamental solutions") {
  const HillPotential zero;
  for (Precision p : {Precision::Double, Precision::DoubleDouble}) {
    for (cplx lam : {cplx(2.25, 0), cplx(10.0, 0.5), cplx(-3.0, 1.0), cplx(49.7, 0)}) {
      const auto fd = integrate_fundamental(zero, lam, p);
      const cplx w = std::sqrt(lam);
      const double tol = 1e-12 * (1 + std::abs(lam));
      CHECK(std::abs(fd.phi_end() - std::cos(pi * w)) < tol);
      CHECK(std::abs(fd.psi_end() - std::sin(pi * w) / w) < tol);
      CHECK(std::abs(fd.dphi_end() + w * std::sin(pi * w)) < tol);
      CHECK(std::abs(fd.dpsi_end() - std::cos(pi * w)) < tol);
    }
  }
  CHECK(std::abs(discriminant(zero, 2.25, Precision::Double)) < 1e-14);
}

TEST_CASE("free Dirac transfer matrix") {
  const DiracPotential zero;
  for (cplx lam : {cplx(0.3, 0), cplx(2.5, -0.4)}) {
    const auto fd = integrate_fundamental(zero, lam, Precision::Double);
    CHECK(std::abs(fd.m[0] - std::exp(cplx(0, -1) * lam * pi)) < 1e-13);
    CHECK(std::abs(fd.m[3] - std::exp(cplx(0, 1) * lam * pi)) < 1e-13);
    CHECK(std::abs(fd.m[1]) < 1e-15);
    CHECK(std::abs(fd.m[2]) < 1e-15);
  }
}

TEST_CASE("Wronskian and Liouville: det M = 1") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  for (int draw = 0; draw < 5; ++draw) {
    HillPotential v;
    DiracPotential d;
    for (int k = -2; k <= 2; ++k) {
      v.coeffs[k] = {g(rng), g(rng)};
      d.p[k] = {g(rng), g(rng)};
      d.q[k] = {g(rng), g(rng)};
    }
    const cplx lam(3.0 * draw + 1.0, g(rng));
    CHECK(std::abs(integrate_fundamental(v, lam, Precision::Double).det() - 1.0) < 1e-11);
    CHECK(std::abs(integrate_fundamental(d, lam, Precision::Double).det() - 1.0) < 1e-11);
    CHECK(std::abs(integrate_fundamental(v, lam, Precision::DoubleDouble).det() - 1.0) < 1e-14);
  }
}

TEST_CASE("lambda-derivative matches a central difference") {
  HillPotential v{{{-1, cplx(1, 0.5)}, {1, cplx(-0.3, 2)}}};
  const cplx lam(7.3, 0.2);
  const double h = 1e-5;
  const auto a = integrate_fundamental(v, lam + h, Precision::Double);
  const auto b = integrate_fundamental(v, lam - h, Precision::Double);
  const auto c = integrate_fundamental(v, lam, Precision::Double);
  for (int k = 0; k < 4; ++k) CHECK(std::abs((a.m[k] - b.m[k]) / (2 * h) - c.dm[k]) < 1e-7 * (1 + std::abs(c.dm[k])));
}

TEST_CASE("Mathieu eigenvalues agree with Galerkin") {
  HillPotential v{{{-1, 1.0}, {1, 1.0}}};
  for (int n = 1; n <= 5; ++n) {
    const auto bc = parity_bc(n);
    const auto g = eigs_near(v, bc, double(n) * n, default_plan(OperatorKind::Hill, bc, n));
    const auto m = solve_bc(v, bc, double(n) * n);
    REQUIRE(m.roots.size() == 2);
    REQUIRE(g.eigenvalues.size() == 2);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(m.roots[k].value - g.eigenvalues[k].value) < 1e-9);
  }
}

TEST_CASE("double-double resolves a tiny gap") {
  HillPotential v{{{-1, 1.0}, {1, 1.0}}};
  SolveOptions o;
  o.precision = Precision::DoubleDouble;
  const auto r = solve_bc(v, BoundaryCondition::per_plus(), 36.0, o);
  REQUIRE(r.roots.size() == 2);
  const double gap = std::abs(r.roots[1].offset - r.roots[0].offset);
  CHECK(gap == doctest::Approx(1.3541227687589e-07).epsilon(1e-9));
}

TEST_CASE("argument-principle counts match free counts") {
  const HillPotential zero;
  CHECK(count_roots(zero, BoundaryCondition::per_plus(), 16.0, 1.0) == 2);
  CHECK(count_roots(zero, BoundaryCondition::per_minus(), 16.0, 1.0) == 0);
  CHECK(count_roots(zero, BoundaryCondition::dirichlet(), 16.0, 1.0) == 1);
  CHECK(count_roots(zero, BoundaryCondition::per_minus(), 25.0, 1.0) == 2);
  HillPotential v{{{-1, 1.0}, {1, 4.0}}};
  CHECK(count_roots_in_window(v, BoundaryCondition::dirichlet(), {-5.0, 30.0, -5.0, 5.0}) == 5);
}

TEST_CASE("lowest quasi-periodic eigenvalues of the free operator") {
  const HillPotential zero;
  const double t = 1.0;
  const auto ws = lowest_eigenvalues(zero, BoundaryCondition::quasi(t), 6);
  std::vector<double> want;
  for (int k = -5; k <= 5; ++k) want.push_back(std::pow(2.0 * k + t / pi, 2));
  std::sort(want.begin(), want.end());
  REQUIRE(ws.eigenvalues.size() >= 6);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(ws.eigenvalues[k] - want[k]) < 1e-10);
}

TEST_CASE("characteristic function preconditions") {
  const DiracPotential zero;
  CHECK_THROWS_AS(characteristic(zero, BoundaryCondition::neumann(), 1.0, 0.0, Precision::Double), PreconditionError);
  CHECK(std::string(precision_name(Precision::DoubleDouble)) == "dd");
}
