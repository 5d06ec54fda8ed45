#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hillgap/cli.hpp"

using namespace hillgap;
using hillgap::cli::parse_complex;
using hillgap::cli::parse_potential;
using hillgap::cli::parse_range;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5-0.25i") == cplx(1.5, -0.25));
  CHECK(parse_complex("2") == cplx(2, 0));
  CHECK(parse_complex("-i") == cplx(0, -1));
  CHECK(parse_complex("i") == cplx(0, 1));
  CHECK(parse_complex("3e-2+1e-1i") == cplx(3e-2, 1e-1));
  CHECK(parse_complex("0.5i") == cplx(0, 0.5));
  CHECK_THROWS_AS(parse_complex("1 + 2i"), PreconditionError);
  CHECK_THROWS_AS(parse_complex("abc"), PreconditionError);
  CHECK_THROWS_AS(parse_complex(""), PreconditionError);
}

TEST_CASE("index ranges") {
  CHECK(parse_range("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_range("-2..1") == std::vector<int>{-2, -1, 0, 1});
  CHECK(parse_range("7") == std::vector<int>{7});
  CHECK(parse_range("3,1,5") == std::vector<int>{3, 1, 5});
  CHECK_THROWS_AS(parse_range("4..1"), PreconditionError);
  CHECK_THROWS_AS(parse_range("x"), PreconditionError);
}

TEST_CASE("potential grammar") {
  const auto m = std::get<HillPotential>(parse_potential("mathieu:a=1"));
  CHECK(m.coeff(-1) == 1.0);
  CHECK(m.coeff(1) == 1.0);
  const auto t = std::get<HillPotential>(parse_potential("mathieu:a=1,b=4"));
  CHECK(t.coeff(1) == 4.0);
  const auto h = std::get<HillPotential>(parse_potential("hill:-1=1,2=0.5-1i"));
  CHECK(h.coeff(2) == cplx(0.5, -1));
  CHECK(h.coeff(-1) == 1.0);
  CHECK(std::get<HillPotential>(parse_potential("zero")).coeffs.empty());
  const auto d = std::get<DiracPotential>(parse_potential("dirac:p-1=1,q1=2i"));
  CHECK(d.p.at(-1) == 1.0);
  CHECK(d.q.at(1) == cplx(0, 2));
  const auto e = std::get<DiracPotential>(parse_potential("dirac-two-exp:a=1,A=2,b=3,B=4"));
  CHECK(e.p.at(-1) == 1.0);
  CHECK(e.p.at(1) == 2.0);
  CHECK(e.q.at(-1) == 3.0);
  CHECK(e.q.at(1) == 4.0);
  CHECK_THROWS_AS(parse_potential("bessel:a=1"), PreconditionError);
  CHECK_THROWS_AS(parse_potential("hill:x=1"), PreconditionError);
}

TEST_CASE("potential from a file") {
  const auto path = temp_file("hillgap_pot.txt", "# two exponentials\nhill:-1=1\n1=4  # b\n");
  const auto v = std::get<HillPotential>(parse_potential(path));
  CHECK(v.coeff(-1) == 1.0);
  CHECK(v.coeff(1) == 4.0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"isospectral", "--pair", "1,4,2,3"}).code == 1);
  CHECK(run({"spectrum", "--potential", "zero", "--bc", "robin", "--n", "1"}).code == 1);
  CHECK(run({"spectrum", "--potential", "mathieu:a=1", "--bc", "quasi:0.5", "--n", "1..3", "--backend", "galerkin"}).code == 1);
  const auto ok = run({"isospectral", "--pair", "1,4,2,2", "--t", "1.0", "--count", "6"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
}

TEST_CASE("spectrum CSV is deterministic") {
  const std::vector<std::string> args{"spectrum", "--potential", "mathieu:a=1", "--bc", "per+", "--n", "2,4"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("n,bc,k,backend,re,im,offset_re,offset_im,agreement\n", 0) == 0);
}

TEST_CASE("config file with flag override") {
  const auto cfg = temp_file("hillgap_cfg.ini", "[spectrum]\npotential = zero\nbc = dir\nn = 3\nbackend = monodromy\n");
  const auto from_file = run({"--config", cfg, "spectrum"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("\n3,dir,") != std::string::npos);
  const auto overridden = run({"--config", cfg, "spectrum", "--n", "5"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("\n5,dir,") != std::string::npos);
  CHECK(overridden.out.find("\n3,dir,") == std::string::npos);
}

TEST_CASE("verify writes CSV and JSON") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = (dir / "hillgap_verify.csv").string(), json = (dir / "hillgap_verify.json").string();
  const auto r = run({"--threads", "1", "verify", "--family", "two-exp", "--a", "1", "--b", "1", "--n", "3..4",
                      "--out-csv", csv, "--out-json", json});
  CHECK(r.code == 0);
  std::ifstream c(csv), j(json);
  std::string header;
  std::getline(c, header);
  CHECK(header.rfind("n,", 0) == 0);
  std::stringstream js;
  js << j.rdbuf();
  CHECK(js.str().find("\"rows\"") != std::string::npos);
}
