#include "hillgap/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "hillgap/verify.hpp"

namespace hillgap::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw PreconditionError("bad number '" + whole + "'");
  return x;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw PreconditionError("bad integer '" + s + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw PreconditionError("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, s);
  };
  if (cut == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, cut), s), imag_part(body.substr(cut))};
}

std::vector<int> parse_range(const std::string& text) {
  const std::string s = trim(text);
  std::vector<int> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int a = parse_int(trim(s.substr(0, dots)));
    const int b = parse_int(trim(s.substr(dots + 2)));
    if (b < a) throw PreconditionError("empty range '" + s + "'");
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
  if (out.empty()) throw PreconditionError("empty index list");
  return out;
}

namespace {

std::map<std::string, std::string> key_values(const std::string& body, const std::string& whole) {
  std::map<std::string, std::string> kv;
  for (const auto& item : split(body, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("expected key=value in potential '" + whole + "'");
    kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return kv;
}

Potential parse_inline(const std::string& s) {
  if (s == "zero") return HillPotential{};
  if (s == "dirac-zero") return DiracPotential{};
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw PreconditionError("unknown potential '" + s + "'");
  const std::string head = s.substr(0, colon);
  const auto kv = key_values(s.substr(colon + 1), s);
  auto get = [&](const std::string& k) -> std::optional<cplx> {
    auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return parse_complex(it->second);
  };
  if (head == "mathieu") {
    const auto a = get("a");
    if (!a) throw PreconditionError("mathieu potential needs a=<value>");
    const cplx b = get("b").value_or(*a);
    return HillPotential{{{-1, *a}, {1, b}}};
  }
  if (head == "hill") {
    HillPotential v;
    for (const auto& [k, c] : kv) {
      const cplx z = parse_complex(c);
      if (z != 0.0) v.coeffs[parse_int(k)] = z;
    }
    return v;
  }
  if (head == "dirac") {
    DiracPotential v;
    for (const auto& [k, c] : kv) {
      if (k.size() < 2 || (k[0] != 'p' && k[0] != 'q'))
        throw PreconditionError("dirac coefficients are named p<k> or q<k>: '" + k + "'");
      const cplx z = parse_complex(c);
      if (z == 0.0) continue;
      (k[0] == 'p' ? v.p : v.q)[parse_int(k.substr(1))] = z;
    }
    return v;
  }
  if (head == "dirac-two-exp") {
    auto need = [&](const char* k) {
      const auto z = get(k);
      if (!z) throw PreconditionError(std::string("dirac-two-exp needs ") + k + "=<value>");
      return *z;
    };
    return DiracPotential{{{-1, need("a")}, {1, need("A")}}, {{-1, need("b")}, {1, need("B")}}};
  }
  throw PreconditionError("unknown potential '" + s + "'");
}

}  // namespace

Potential parse_potential(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    std::string line, joined;
    while (std::getline(in, line)) {
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      if (!joined.empty() && joined.back() != ':' && joined.back() != ',') joined += ',';
      joined += line;
    }
    return parse_inline(joined);
  }
  return parse_inline(trim(spec));
}

// ---- subcommands ------------------------------------------------------------

namespace {

struct SpectrumArgs {
  std::string potential = "zero";
  std::string bc = "per+";
  std::string n = "1..5";
  std::string backend = "both";
  std::string precision = "double";
  std::string out;
  bool backend_given = false;
};

struct VerifyArgs {
  std::string family;
  std::string a, b, A, B, jump;
  int R = 1, S = 2, s = 3, m = 0, K = 64;
  std::string n = "1..6";
  std::string out_json, out_csv;
  double eta = 0.3;
  std::string backend = "both";
  std::string precision = "auto";
};

struct IsoArgs {
  std::string pair, shift;
  std::string potential = "mathieu:a=1";
  double t = 0.0;
  int count = 10;
};

void csv_eigen_row(std::ostream& os, int n, const std::string& bc, std::size_t k, const char* backend,
                   const Eigenvalue& e, std::optional<double> agreement) {
  os << n << ',' << bc << ',' << k << ',' << backend << ',' << format_g17(e.value.real()) << ','
     << format_g17(e.value.imag()) << ',' << format_g17(e.offset.real()) << ',' << format_g17(e.offset.imag())
     << ',' << (agreement ? format_g17(*agreement) : std::string()) << '\n';
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  const Potential v = parse_potential(a.potential);
  const BoundaryCondition bc = BoundaryCondition::parse(a.bc);
  const auto ns = parse_range(a.n);
  const OperatorKind kind = kind_of(v);
  const Precision prec = a.precision == "dd"       ? Precision::DoubleDouble
                         : a.precision == "double" ? Precision::Double
                                                   : throw PreconditionError("precision must be double or dd");
  BackendPolicy backend = parse_backend(a.backend);
  const bool galerkin_capable = bc.type != BoundaryCondition::Type::Quasi &&
                                !(kind == OperatorKind::Dirac && bc.type != BoundaryCondition::Type::PerPlus &&
                                  bc.type != BoundaryCondition::Type::PerMinus);
  if (!galerkin_capable) {
    if (a.backend_given && backend != BackendPolicy::Monodromy)
      throw PreconditionError("boundary condition " + bc.name() + " requires --backend monodromy");
    backend = BackendPolicy::Monodromy;
  }

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw PreconditionError("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? out : file;
  os << "n,bc,k,backend,re,im,offset_re,offset_im,agreement\n";

  int status = 0;
  if (bc.type == BoundaryCondition::Type::Quasi) {
    // Quasi-periodic spectra are listed by rank: --n selects ranks (1-based).
    const int hi = *std::max_element(ns.begin(), ns.end());
    if (hi < 1) throw PreconditionError("quasi-periodic ranks start at 1");
    try {
      const WindowSpectrum ws = lowest_eigenvalues(v, bc, hi, prec);
      for (int r : ns) {
        if (r < 1) continue;
        const cplx z = ws.eigenvalues[r - 1];
        csv_eigen_row(os, r, bc.name(), 0, "monodromy", {z, z}, std::nullopt);
      }
    } catch (const StructuralError& e) {
      err << "error: " << e.what() << "\n";
      status = 2;
    } catch (const ConvergenceError& e) {
      err << "error: " << e.what() << "\n";
      status = 2;
    }
    return status;
  }

  const int n_max = std::max(std::abs(*std::max_element(ns.begin(), ns.end())),
                             std::abs(*std::min_element(ns.begin(), ns.end())));
  std::optional<GalerkinSpectrum> gal;
  if (backend != BackendPolicy::Monodromy) gal.emplace(v, bc, default_plan(kind, bc, n_max));

  for (int n : ns) {
    const cplx lambda0 = reference_point(kind, n);
    try {
      std::vector<Eigenvalue> g;
      if (gal) g = gal->near(lambda0).eigenvalues;
      if (backend == BackendPolicy::Galerkin) {
        for (std::size_t k = 0; k < g.size(); ++k) csv_eigen_row(os, n, bc.name(), k, "galerkin", g[k], std::nullopt);
        continue;
      }
      SolveOptions so;
      so.precision = prec;
      for (const auto& e : g) so.seeds.push_back(e.value);
      const SolveResult r = solve_bc(v, bc, lambda0, so);
      for (std::size_t k = 0; k < r.roots.size(); ++k) {
        std::optional<double> agree;
        if (gal) {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& e : g) best = std::min(best, std::abs(e.offset - r.roots[k].offset));
          agree = best;
        }
        csv_eigen_row(os, n, bc.name(), k, "monodromy", r.roots[k], agree);
      }
    } catch (const StructuralError& e) {
      err << "n = " << n << ": " << e.what() << "\n";
      status = 2;
    } catch (const ConvergenceError& e) {
      err << "n = " << n << ": " << e.what() << "\n";
      status = 2;
    }
  }
  return status;
}

FamilySpec family_from(const VerifyArgs& a) {
  auto c = [&](const std::string& s, const char* name) {
    if (s.empty()) throw PreconditionError(std::string("--") + name + " is required for family " + a.family);
    return parse_complex(s);
  };
  if (a.family == "two-exp") return make_two_exp(c(a.a, "a"), c(a.b, "b"));
  if (a.family == "gen-two-exp") return make_gen_two_exp(c(a.a, "a"), c(a.b, "b"), a.R, a.S);
  if (a.family == "s-exp") return make_s_exp(c(a.a, "a"), c(a.b, "b"), a.s);
  if (a.family == "four-term") return make_four_term(c(a.a, "a"), c(a.b, "b"), c(a.A, "A"), c(a.B, "B"));
  if (a.family == "dirac-two-exp")
    return make_dirac_two_exp(c(a.a, "a"), c(a.A, "A"), c(a.b, "b"), c(a.B, "B"));
  if (a.family == "smooth-jump") return make_smooth_jump(a.m, c(a.jump, "jump"), a.K);
  throw PreconditionError("unknown family '" + a.family + "'");
}

int cmd_verify(const VerifyArgs& a, int threads, std::ostream& out, std::ostream& err) {
  const FamilySpec fam = family_from(a);
  RunOptions opts;
  opts.eta = a.eta;
  opts.threads = threads;
  opts.triangle.backend = parse_backend(a.backend);
  opts.triangle.precision = parse_precision_policy(a.precision);
  const VerificationReport rep = run_family(fam, parse_range(a.n), opts);
  print_ratio_table(rep, out);
  for (const auto& s : rep.skipped) err << "warning: skipped " << s << "\n";
  if (!a.out_json.empty()) {
    std::ofstream f(a.out_json);
    if (!f) throw PreconditionError("cannot write " + a.out_json);
    f << report_json(rep) << "\n";
  }
  if (!a.out_csv.empty()) {
    std::ofstream f(a.out_csv);
    if (!f) throw PreconditionError("cannot write " + a.out_csv);
    write_report_csv(rep, f);
  }
  return rep.hard_checks_pass() ? 0 : 2;
}

int cmd_isospectral(const IsoArgs& a, std::ostream& out) {
  SpectrumComparison c;
  if (!a.pair.empty() == !a.shift.empty()) throw PreconditionError("give exactly one of --pair and --shift");
  if (!a.pair.empty()) {
    const auto parts = split(a.pair, ',');
    if (parts.size() != 4) throw PreconditionError("--pair needs a,b,c,d");
    c = check_isospectral(parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]),
                          parse_complex(parts[3]), a.t, a.count);
  } else {
    c = check_shift_invariance(parse_potential(a.potential), parse_complex(a.shift), a.t, a.count);
  }
  out << "lowest " << a.count << " eigenvalues at t = " << format_g17(a.t) << "\n";
  for (std::size_t k = 0; k < c.first.size(); ++k)
    out << k + 1 << "  " << format_g17(c.first[k].real()) << ' ' << format_g17(c.first[k].imag()) << "   "
        << format_g17(c.second[k].real()) << ' ' << format_g17(c.second[k].imag()) << "\n";
  out << "max matched deviation " << format_g17(c.max_deviation) << " (" << c.method << ") "
      << (c.ok ? "PASS" : "FAIL") << "\n";
  return c.ok ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral gaps and triangles of Hill and Dirac operators", "hillgap"};
  app.set_config("--config", "", "key = value file; [spectrum], [verify] or [isospectral] sections");
  app.fallthrough();
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = available cores)");
  app.footer("Complex values are written like 1.5-0.25i (no spaces). Ranges: a..b or a,b,c.");

  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum", "eigenvalues near each reference point, as CSV");
  sp->add_option("--potential", sa.potential, "inline spec or file (zero, mathieu:a=1, hill:-1=1,1=4, ...)");
  sp->add_option("--bc", sa.bc, "per+|per-|dir|neu|quasi:<t>");
  sp->add_option("--n", sa.n, "index range; ranks for quasi:<t>");
  auto* backend_opt = sp->add_option("--backend", sa.backend, "galerkin|monodromy|both");
  sp->add_option("--precision", sa.precision, "double|dd");
  sp->add_option("--out", sa.out, "CSV path (default stdout)");

  VerifyArgs va;
  auto* vp = app.add_subcommand("verify", "compare measured triangles with closed-form predictions");
  vp->add_option("--family", va.family, "two-exp|gen-two-exp|s-exp|four-term|dirac-two-exp|smooth-jump")
      ->required();
  vp->add_option("--a", va.a);
  vp->add_option("--b", va.b);
  vp->add_option("--A", va.A);
  vp->add_option("--B", va.B);
  vp->add_option("--R", va.R);
  vp->add_option("--S", va.S);
  vp->add_option("--s", va.s);
  vp->add_option("--m", va.m);
  vp->add_option("--jump", va.jump);
  vp->add_option("--K", va.K, "Fourier truncation for smooth-jump");
  vp->add_option("--n", va.n, "index range");
  vp->add_option("--out-json", va.out_json);
  vp->add_option("--out-csv", va.out_csv);
  vp->add_option("--eta", va.eta, "gap-bound slack");
  vp->add_option("--backend", va.backend, "galerkin|monodromy|both");
  vp->add_option("--precision", va.precision, "double|dd|auto");

  IsoArgs ia;
  auto* ip = app.add_subcommand("isospectral", "compare quasi-periodic spectra of two potentials");
  ip->add_option("--pair", ia.pair, "a,b,c,d with ab = cd");
  ip->add_option("--shift", ia.shift, "complex shift zeta");
  ip->add_option("--potential", ia.potential, "potential for --shift");
  ip->add_option("--t", ia.t, "quasi-momentum");
  ip->add_option("--count", ia.count, "number of eigenvalues");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }
  sa.backend_given = backend_opt->count() > 0;

  try {
    if (sp->parsed()) return cmd_spectrum(sa, out, err);
    if (vp->parsed()) return cmd_verify(va, threads, out, err);
    return cmd_isospectral(ia, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace hillgap::cli
