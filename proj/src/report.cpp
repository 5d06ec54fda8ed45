#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "hillgap/verify.hpp"

namespace hillgap {

using nlohmann::json;

std::string format_g17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json cx(cplx z) { return json::array({z.real(), z.imag()}); }

template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, cplx>) {
    return cx(*v);
  } else {
    return *v;
  }
}

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_g17(x);
}

json params_of(const FamilySpec& f) {
  struct V {
    json operator()(const TwoExpHill& p) const { return {{"a", cx(p.a)}, {"b", cx(p.b)}}; }
    json operator()(const GenTwoExp& p) const {
      return {{"a", cx(p.a)}, {"b", cx(p.b)}, {"R", p.R}, {"S", p.S}, {"d", p.d}, {"r", p.r}, {"s", p.s}};
    }
    json operator()(const SExp& p) const { return {{"a", cx(p.a)}, {"b", cx(p.b)}, {"s", p.s}}; }
    json operator()(const FourTerm& p) const {
      return {{"a", cx(p.a)},         {"b", cx(p.b)},       {"A", cx(p.A)},         {"B", cx(p.B)},
              {"alpha", cx(p.alpha)}, {"beta", cx(p.beta)}, {"tau", cx(p.tau)}, {"sigma", cx(p.sigma)}};
    }
    json operator()(const DiracTwoExp& p) const {
      return {{"a", cx(p.a)}, {"A", cx(p.A)}, {"b", cx(p.b)}, {"B", cx(p.B)}};
    }
    json operator()(const SmoothJump& p) const { return {{"m", p.m}, {"jump", cx(p.jump)}, {"K", p.K}}; }
  };
  return std::visit(V{}, f);
}

json bound_json(const BoundCheck& c) {
  if (!c.applicable) return {{"applicable", false}, {"note", c.note}};
  return {{"applicable", true},          {"ok", c.ok},   {"value", num(c.value)},
          {"lower", num(c.lower)},       {"upper", num(c.upper)},
          {"lower_slack", num(c.lower_slack)}, {"upper_slack", num(c.upper_slack)}, {"note", c.note}};
}

json triangle_json(const SpectralTriangle& t) {
  return {{"lambda0", cx(t.lambda0)}, {"lambda_minus", cx(t.lambda_minus)}, {"lambda_plus", cx(t.lambda_plus)},
          {"mu", cx(t.mu)},           {"nu", opt(t.nu)},                    {"gap", cx(t.gap)},
          {"deviation_plus", cx(t.deviation_plus)}, {"deviation_minus", cx(t.deviation_minus)},
          {"midpoint_dev", cx(t.midpoint_dev)}};
}

json row_json(const ReportRow& r) {
  json j;
  j["n"] = r.n;
  j["computed"] = r.computed;
  if (!r.computed) {
    j["error"] = r.error;
    return j;
  }
  const TriangleResult& tr = *r.triangles;
  j["triangle"] = triangle_json(tr.chosen);
  j["precision"] = precision_name(tr.precision_used);
  j["backend_disagreement"] = opt(tr.disagreement);
  j["warnings"] = tr.warnings;
  const PredictionRecord& p = r.prediction;
  j["prediction"] = {{"applicable", p.applicable},
                     {"gap_pred", cx(p.gap_pred)},
                     {"gap_log_abs", num(p.gap_log.log_abs())},
                     {"dev_plus_pred", opt(p.dev_plus_pred)},
                     {"dev_minus_pred", opt(p.dev_minus_pred)},
                     {"midpoint_pred", opt(p.midpoint_pred)},
                     {"sign_resolved", p.sign_resolved},
                     {"B_minus", cx(p.beta.minus())},
                     {"B_plus", cx(p.beta.plus())},
                     {"note", p.note}};
  j["sign_choice"] = r.sign_choice;
  j["sign_matched"] = r.sign_matched;
  j["gap_ratio"] = opt(r.gap_ratio);
  j["midpoint_ratio"] = opt(r.midpoint_ratio);
  if (r.dev_plus_ratio || r.dev_minus_ratio)
    j["dev_ratios"] = {{"plus", opt(r.dev_plus_ratio)}, {"minus", opt(r.dev_minus_ratio)}};
  else
    j["dev_ratios"] = nullptr;
  j["t_n"] = r.t_n ? num(*r.t_n) : json(nullptr);
  j["r_n"] = opt(r.r_n);
  j["enclosure"] = bound_json(r.enclosure);
  j["gap_bound"] = bound_json(r.gap_bound);
  j["neumann_ratio"] = opt(r.neumann_ratio);
  if (r.self_adjoint) {
    const auto& s = *r.self_adjoint;
    j["self_adjoint"] = {{"ordering_ok", opt(r.ordering_ok)},   {"dev_plus", opt(s.dev_plus)},
                         {"dev_minus", opt(s.dev_minus)},       {"midpoint", opt(s.midpoint)},
                         {"gap_vs_2b", opt(s.gap_vs_2b)},       {"far_vs_2b", opt(s.far_vs_2b)},
                         {"near_over_gap", opt(s.near_over_gap)}};
  }
  return j;
}

std::string cell(double x) { return format_g17(x); }

template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? format_g17(*v) : std::string();
}

void cx_cells(std::ostream& os, const std::optional<cplx>& z) {
  if (z)
    os << ',' << format_g17(z->real()) << ',' << format_g17(z->imag());
  else
    os << ",,";
}

}  // namespace

std::string report_json(const VerificationReport& rep) {
  json j;
  j["family"] = family_name(rep.family);
  j["params"] = params_of(rep.family);
  j["caveat"] = "enclosure and gap-bound checks use closed-form proxies for the exact functionals";
  j["rows"] = json::array();
  for (const auto& r : rep.rows) j["rows"].push_back(row_json(r));
  const ReportSummary& s = rep.summary;
  j["summary"] = {{"t_sup", s.t_sup ? num(*s.t_sup) : json(nullptr)},
                  {"r_sup", opt(s.r_sup)},
                  {"gap_trend_ok", s.gap_trend_ok},
                  {"midpoint_trend_ok", s.midpoint_trend_ok},
                  {"rows_failed", s.rows_failed},
                  {"enclosure_failures", s.enclosure_failures},
                  {"gap_bound_failures", s.gap_bound_failures},
                  {"ordering_failures", s.ordering_failures},
                  {"backend_failures", s.backend_failures},
                  {"max_backend_disagreement", s.max_backend_disagreement},
                  {"hard_checks_pass", rep.hard_checks_pass()},
                  {"skipped", rep.skipped}};
  return j.dump(2);
}

void write_report_csv(const VerificationReport& rep, std::ostream& os) {
  os << "n,lam_minus_re,lam_minus_im,lam_plus_re,lam_plus_im,mu_re,mu_im,nu_re,nu_im,gap_re,gap_im,"
        "gap_pred_re,gap_pred_im,gap_ratio_re,gap_ratio_im,mid_dev_re,mid_dev_im,mid_pred_re,mid_pred_im,"
        "t_n,r_n,enclosure_lo,enclosure_hi,backend_diff\n";
  for (const auto& r : rep.rows) {
    os << r.n;
    const SpectralTriangle* t = r.triangle();
    auto tc = [&](auto get) { cx_cells(os, t ? std::optional<cplx>(get(*t)) : std::nullopt); };
    tc([](const SpectralTriangle& x) { return x.lambda_minus; });
    tc([](const SpectralTriangle& x) { return x.lambda_plus; });
    tc([](const SpectralTriangle& x) { return x.mu; });
    cx_cells(os, t ? t->nu : std::nullopt);
    tc([](const SpectralTriangle& x) { return x.gap; });
    const bool pred = r.computed && r.prediction.applicable;
    cx_cells(os, pred ? std::optional<cplx>(r.signed_gap_pred()) : std::nullopt);
    cx_cells(os, r.gap_ratio);
    tc([](const SpectralTriangle& x) { return x.midpoint_dev; });
    cx_cells(os, pred ? r.prediction.midpoint_pred : std::nullopt);
    os << ',' << cell(r.computed ? r.t_n : std::nullopt) << ',' << cell(r.r_n);
    if (r.enclosure.applicable)
      os << ',' << cell(r.enclosure.lower_slack) << ',' << cell(r.enclosure.upper_slack);
    else
      os << ",,";
    os << ',' << cell(r.triangles ? r.triangles->disagreement : std::nullopt) << '\n';
  }
}

void print_ratio_table(const VerificationReport& rep, std::ostream& os) {
  char buf[512];
  os << "family " << family_name(rep.family) << "\n";
  std::snprintf(buf, sizeof buf, "%5s %12s %22s %22s %5s %9s %9s %5s %5s %10s %4s\n", "n", "|gap|", "gap_ratio",
                "mid_ratio", "sign", "t_n", "r_n", "encl", "bound", "backend", "prec");
  os << buf;
  auto c2 = [](const std::optional<cplx>& z) {
    if (!z) return std::string("-");
    char b[64];
    std::snprintf(b, sizeof b, "%.6f%+.6fi", z->real(), z->imag());
    return std::string(b);
  };
  auto d = [](const std::optional<double>& x, const char* fmt) {
    if (!x) return std::string("-");
    char b[32];
    std::snprintf(b, sizeof b, fmt, *x);
    return std::string(b);
  };
  auto flag = [](const BoundCheck& c) { return std::string(!c.applicable ? "-" : c.ok ? "ok" : "FAIL"); };
  for (const auto& r : rep.rows) {
    if (!r.computed) {
      os << std::string(5 - std::min<std::size_t>(5, std::to_string(r.n).size()), ' ') << r.n
         << "  error: " << r.error << "\n";
      continue;
    }
    const auto& t = r.triangles->chosen;
    std::snprintf(buf, sizeof buf, "%5d %12.5e %22s %22s %5s %9s %9s %5s %5s %10s %4s\n", r.n, std::abs(t.gap),
                  c2(r.gap_ratio).c_str(), c2(r.midpoint_ratio).c_str(),
                  r.sign_matched ? (r.sign_choice > 0 ? "+" : "-") : ".", d(r.t_n, "%.3g").c_str(),
                  d(r.r_n, "%.3g").c_str(), flag(r.enclosure).c_str(), flag(r.gap_bound).c_str(),
                  d(r.triangles->disagreement, "%.2e").c_str(), precision_name(r.triangles->precision_used));
    os << buf;
    for (const auto& w : r.triangles->warnings) os << "      note: " << w << "\n";
  }
  for (const auto& s : rep.skipped) os << "skipped " << s << "\n";
  const auto& s = rep.summary;
  os << "sup t_n = " << d(s.t_sup, "%.4g") << ", sup r_n = " << d(s.r_sup, "%.4g")
     << ", gap trend " << (s.gap_trend_ok ? "ok" : "irregular") << ", midpoint trend "
     << (s.midpoint_trend_ok ? "ok" : "irregular") << "\n";
  os << "enclosure failures " << s.enclosure_failures << ", gap-bound failures " << s.gap_bound_failures
     << " (proxy-based); ordering failures " << s.ordering_failures << ", backend failures "
     << s.backend_failures << ", rows failed " << s.rows_failed << "\n";
}

}  // namespace hillgap
