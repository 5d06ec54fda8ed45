#pragma once

#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hillgap/asymptotics.hpp"
#include "hillgap/galerkin.hpp"
#include "hillgap/model.hpp"
#include "hillgap/monodromy.hpp"
#include "hillgap/triangles.hpp"

namespace hillgap {

enum class BackendPolicy { Galerkin, Monodromy, Both };
enum class PrecisionPolicy { Double, DoubleDouble, Auto };

BackendPolicy parse_backend(const std::string& s);
PrecisionPolicy parse_precision_policy(const std::string& s);

// Predicted |gap| below which Auto switches the monodromy backend to double-double.
inline constexpr double kAutoDDThreshold = 1e-6;

struct TriangleOptions {
  BackendPolicy backend = BackendPolicy::Both;
  PrecisionPolicy precision = PrecisionPolicy::Auto;
  bool neumann = true;                   // Hill only
  std::optional<TruncationPlan> plan;    // Per+- plan override (Galerkin)
  std::optional<TruncationPlan> dn_plan; // Dirichlet/Neumann plan override
  int n_max = 0;                         // sizes the default plans
};

// Both backends' results for one index.
struct TriangleResult {
  std::optional<SpectralTriangle> monodromy;
  std::optional<SpectralTriangle> galerkin;
  SpectralTriangle chosen;
  std::optional<double> disagreement;  // max vertex distance between backends
  Precision precision_used = Precision::Double;
  double radius = 0.0;                 // largest localization radius used
  std::vector<std::string> warnings;
};

// Galerkin spectra shared by all indices of one run.
class GalerkinCache {
 public:
  GalerkinCache(Potential v, TriangleOptions opts);
  GalerkinSpectrum& get(const BoundaryCondition& bc);

 private:
  Potential v_;
  TriangleOptions opts_;
  std::mutex mu_;
  std::vector<std::pair<std::string, std::unique_ptr<GalerkinSpectrum>>> entries_;
};

TriangleResult compute_triangle(const Potential& v, int n, const TriangleOptions& opts,
                                const std::optional<PredictionRecord>& pred = std::nullopt,
                                GalerkinCache* cache = nullptr);

struct BoundCheck {
  bool applicable = false;
  bool ok = false;
  double value = 0.0;   // measured quantity
  double lower = 0.0;
  double upper = 0.0;
  double lower_slack = 0.0;  // enclosure: value / lower; gap bound: value - lower
  double upper_slack = 0.0;  // enclosure: upper / value; gap bound: upper - value
  std::string note;
};

// (|B-|+|B+|)/144 <= |gap| + |mu - lambda_plus| <= 58 (|B-|+|B+|), proxy-based.
BoundCheck check_enclosure(const SpectralTriangle& tri, const BetaProxy& proxy);

// 2 sqrt(t)/(1+t) - eta <= |gap|/(|B-|+|B+|) <= 2 sqrt(t)/(1+t) + eta, proxy-based.
BoundCheck check_gap_bound(const SpectralTriangle& tri, const BetaProxy& proxy, double eta);

// (|nu - lambda_plus| + |gap|) / (|mu - lambda_plus| + |gap|).
std::optional<double> check_neumann_equivalence(const SpectralTriangle& tri);

struct SelfAdjointResiduals {
  std::optional<double> dev_plus;     // Hill: -Re B - |B|; Dirac uses mu - lambda_minus
  std::optional<double> dev_minus;    // Hill: -Re B + |B|; Dirac uses mu - lambda_plus
  std::optional<double> midpoint;     // -+ Re B
  std::optional<double> gap_vs_2b;    // gap ~ 2 B (nonnegative coefficients)
  std::optional<double> far_vs_2b;    // Hill: lambda_plus - mu ~ 2B; Dirac: mu - lambda_minus ~ 2B
  std::optional<double> near_over_gap;  // Hill: |mu - lambda_minus|/|gap|; Dirac: |mu - lambda_plus|/|gap|
};

SelfAdjointResiduals check_self_adjoint_corollaries(const SpectralTriangle& tri, const BetaProxy& proxy);

// lambda_minus <= mu <= lambda_plus (real parts) with imaginary parts below 1e-8.
bool self_adjoint_ordering(const SpectralTriangle& tri);

struct SpectrumComparison {
  bool ok = false;
  double max_deviation = 0.0;
  std::vector<cplx> first, second;
  std::string method;  // "greedy" or "assignment"
};

// Lowest `count` of each side matched into the other side's window set.
SpectrumComparison compare_spectra(const std::vector<cplx>& a, const std::vector<cplx>& b, int count,
                                   double tol);

// Minimal-weight assignment of rows into columns (rows <= cols); returns column per row.
std::vector<int> min_weight_assignment(const std::vector<std::vector<double>>& cost);

SpectrumComparison check_isospectral(cplx a, cplx b, cplx c, cplx d, double t, int count);
SpectrumComparison check_shift_invariance(const Potential& v, cplx zeta, double t, int count);

struct ReportRow {
  int n = 0;
  bool computed = false;
  std::string error;
  std::optional<TriangleResult> triangles;
  PredictionRecord prediction;
  int sign_choice = 1;       // sign applied to an unresolved prediction
  bool sign_matched = false;
  std::optional<cplx> gap_ratio, midpoint_ratio, dev_plus_ratio, dev_minus_ratio;
  std::optional<double> t_n, r_n;
  BoundCheck enclosure, gap_bound;
  std::optional<double> neumann_ratio;
  std::optional<SelfAdjointResiduals> self_adjoint;
  std::optional<bool> ordering_ok;

  const SpectralTriangle* triangle() const { return triangles ? &triangles->chosen : nullptr; }
  // Prediction with the recorded sign applied.
  cplx signed_gap_pred() const { return double(sign_choice) * prediction.gap_pred; }
};

struct ReportSummary {
  std::optional<double> t_sup, r_sup;
  bool gap_trend_ok = true;
  bool midpoint_trend_ok = true;
  int rows_failed = 0;
  int enclosure_failures = 0;
  int gap_bound_failures = 0;
  int ordering_failures = 0;
  int backend_failures = 0;  // disagreement above 1e-8
  double max_backend_disagreement = 0.0;
};

struct RunOptions {
  TriangleOptions triangle;
  double eta = 0.3;
  int threads = 0;  // 0 = hardware concurrency
};

struct VerificationReport {
  FamilySpec family;
  std::vector<ReportRow> rows;
  ReportSummary summary;
  std::vector<std::string> skipped;  // inadmissible indices with reasons
  bool hard_checks_pass() const;
};

VerificationReport run_family(const FamilySpec& fam, const std::vector<int>& ns, const RunOptions& opts);

// |x_k - 1| non-increasing over the top half of the window, one inversion allowed.
bool trend_non_increasing(const std::vector<double>& errors);

// Report output (report.cpp).
std::string format_g17(double x);
void write_report_csv(const VerificationReport& rep, std::ostream& os);
std::string report_json(const VerificationReport& rep);
void print_ratio_table(const VerificationReport& rep, std::ostream& os);

}  // namespace hillgap
