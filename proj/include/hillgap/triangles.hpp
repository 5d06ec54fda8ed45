#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hillgap/model.hpp"

namespace hillgap {

// Assemble a triangle from the Per+- pair (parity of n), the Dirichlet
// eigenvalue and an optional Neumann eigenvalue. All offsets must be taken
// from lambda0 = n^2 (Hill) or n (Dirac). `radius` bounds |offset|; 0 selects
// the Lemma radius.
SpectralTriangle build_triangle(int n, OperatorKind kind, const Eigenvalue& e1, const Eigenvalue& e2,
                                const Eigenvalue& mu, std::optional<Eigenvalue> nu = std::nullopt,
                                double radius = 0.0);

// Convenience overload for plain values (offsets formed by subtraction).
SpectralTriangle build_triangle(int n, OperatorKind kind, cplx e1, cplx e2, cplx mu,
                                std::optional<cplx> nu = std::nullopt, double radius = 0.0);

// Express an eigenvalue found around `center` as an offset from lambda0.
Eigenvalue recenter(const Eigenvalue& e, cplx center, cplx lambda0);

// max(|B-|/|B+|, |B+|/|B-|); +inf when exactly one is zero; absent when both are.
std::optional<double> compute_t_n(const BetaProxy& proxy);

// |mu - lambda_plus| / |gap|; absent when the gap is zero.
std::optional<double> compute_r_n(const SpectralTriangle& tri, std::string* reason = nullptr);

// 2 sqrt(t) / (1 + t), with 0 at t = inf.
double gap_bound_center(double t);

// Finite-window supremum of the present values.
std::optional<double> window_sup(const std::vector<std::optional<double>>& values);

}  // namespace hillgap
