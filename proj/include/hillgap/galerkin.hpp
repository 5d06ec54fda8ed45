#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <vector>

#include "hillgap/model.hpp"

namespace hillgap {

using Matrix = Eigen::MatrixXcd;

// Basis labels in matrix order. Hill Per+/Per-: exponents k of e^{ikx};
// Dirichlet: k of sin(kx); Neumann: k of cos(kx). Dirac: the same k list
// is used for both component blocks (first block (e^{-ikx}, 0), second (0, e^{ikx})).
std::vector<int> hill_basis(const BoundaryCondition& bc, int N);
std::vector<int> dirac_basis(const BoundaryCondition& bc, int N);

Matrix build_hill_matrix(const HillPotential& v, const BoundaryCondition& bc, int N);
Matrix build_dirac_matrix(const DiracPotential& v, const BoundaryCondition& bc, int N);
Matrix build_matrix(const Potential& v, const BoundaryCondition& bc, int N);

// All eigenvalues of a dense complex matrix (balanced, then complex Schur).
std::vector<cplx> eig_all(const Matrix& M);

struct TruncationPlan {
  std::vector<int> sizes;
  double tol = 1e-10;
};

TruncationPlan default_plan(OperatorKind kind, const BoundaryCondition& bc, int n_max);

struct GalerkinSelection {
  std::vector<Eigenvalue> eigenvalues;  // ordered by (real, imag)
  LocalizationDisc disc;
  int size = 0;                // truncation N of the returned set
  double agreement = 0.0;      // max change against the previous size
};

// Eigenvalues at each plan size are computed once and reused for every
// localization center. Safe to share between threads.
class GalerkinSpectrum {
 public:
  GalerkinSpectrum(Potential v, BoundaryCondition bc, TruncationPlan plan);

  const std::vector<cplx>& eigenvalues_at(std::size_t size_index);
  const TruncationPlan& plan() const { return plan_; }

  GalerkinSelection near(cplx lambda0);
  GalerkinSelection near(cplx lambda0, double first_radius);
  GalerkinSelection in_disc(cplx lambda0, const LocalizationDisc& disc);

 private:
  Potential v_;
  BoundaryCondition bc_;
  TruncationPlan plan_;
  std::vector<std::vector<cplx>> cache_;
  std::vector<bool> done_;
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

GalerkinSelection eigs_near(const Potential& v, const BoundaryCondition& bc, cplx lambda0,
                            const TruncationPlan& plan);

// Greedy nearest-neighbour matching; returns the largest matched distance
// (infinity when the sizes differ).
double match_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace hillgap
