#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hillgap/model.hpp"

namespace hillgap {

enum class Precision { Double, DoubleDouble };

const char* precision_name(Precision p);

// Default local error target per precision.
double default_tolerance(Precision p);

// Transfer matrix across [0, pi] and its lambda-derivative.
// Hill: columns are (phi, phi') and (psi, psi') with phi(0)=1, phi'(0)=0,
// psi(0)=0, psi'(0)=1. Dirac: solution operator of
// i diag(1,-1) y' + V y = lambda y with M(0) = I.
struct FundamentalData {
  cplx lambda;
  std::array<cplx, 4> m{};   // m11, m12, m21, m22
  std::array<cplx, 4> dm{};  // d/dlambda
  int steps = 0;

  cplx phi_end() const { return m[0]; }
  cplx dphi_end() const { return m[2]; }
  cplx psi_end() const { return m[1]; }
  cplx dpsi_end() const { return m[3]; }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
  cplx trace() const { return m[0] + m[3]; }
};

FundamentalData integrate_fundamental(const Potential& v, cplx lambda, Precision precision,
                                      double tol = 0.0);

// phi(pi) + psi'(pi) (Hill) or trace M(pi) (Dirac).
cplx discriminant(const Potential& v, cplx lambda, Precision precision, double tol = 0.0);

// Characteristic function F and dF/dlambda at lambda = center + offset.
// The sum is formed in the working precision, so offsets keep their digits.
// Floquet conditions use F = -conj(rho) det(M - rho I) = D - 2cos t.
struct CharValue {
  cplx f;
  cplx df;
};

CharValue characteristic(const Potential& v, const BoundaryCondition& bc, cplx center, cplx offset,
                         Precision precision, double tol = 0.0);

struct SolveOptions {
  Precision precision = Precision::Double;
  double tol = 0.0;            // integrator tolerance; 0 selects the default
  double first_radius = 0.0;   // first localization radius; 0 selects the Lemma radius
  double newton_rtol = 0.0;    // 0 selects 4 eps of the working precision
  std::vector<cplx> seeds;     // absolute starting points tried first
  std::optional<cplx> predicted_gap;
  cplx predicted_center_offset = 0.0;
};

struct SolveResult {
  std::vector<Eigenvalue> roots;  // ordered by (real, imag) of the offset
  LocalizationDisc disc;
  int contour_count = 0;
};

// Roots of F inside the localization disc around lambda0, with the count
// certified by the argument principle.
SolveResult solve_bc(const Potential& v, const BoundaryCondition& bc, cplx lambda0,
                     const SolveOptions& opts = {});

// Argument-principle count on |lambda - center| = radius (double precision).
// The radius is perturbed by +-5% when F nearly vanishes on the contour;
// `used_radius` reports the circle actually integrated.
int count_roots(const Potential& v, const BoundaryCondition& bc, cplx center, double radius,
                double* used_radius = nullptr);

// Axis-parallel rectangle [re_lo, re_hi] x [im_lo, im_hi].
struct Window {
  double re_lo, re_hi, im_lo, im_hi;
};

// Winding number of F around the rectangle boundary by adaptive argument tracking.
int count_roots_in_window(const Potential& v, const BoundaryCondition& bc, const Window& w);

// Every eigenvalue inside a search window that holds at least `count` free
// eigenvalues. Hill: ordered by real part; Dirac: by |real part|.
struct WindowSpectrum {
  Window window;
  std::vector<cplx> eigenvalues;
};

WindowSpectrum lowest_eigenvalues(const Potential& v, const BoundaryCondition& bc, int count,
                                  Precision precision = Precision::Double);

// Search window used by lowest_eigenvalues (exposed for tests).
Window search_window(const Potential& v, const BoundaryCondition& bc, int count);

}  // namespace hillgap
