#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ffhalasz/cli.hpp"
#include "ffhalasz/extremal.hpp"
#include "ffhalasz/io.hpp"

using namespace ffh;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ffhalasz");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("json round trips") {
  const PolyGF f(PrimeField(5), {3, 0, 4});
  CHECK(io::poly_from_json(io::to_json(f)) == f);
  CHECK_THROWS_AS(io::poly_from_json(io::Json::parse(R"({"p":5,"deg":2,"coeffs":[1,2,3]})")), io::FormatError);

  const auto chi = random_chi(1.0, 10, 7);
  const auto back = io::chi_from_json(io::Json::parse(io::to_json(chi).dump()));
  for (std::size_t j = 1; j <= 10; ++j) CHECK(back.at(j) == chi.at(j));

  const auto spec = canned::random(1.0, 6, 3).with_support_cutoff(4);
  const auto loaded = io::spec_from_json(io::to_json(spec, 3), 6);
  CHECK(loaded.q == 3u);
  CHECK(loaded.spec.support_cutoff() == 4);
  for (int d = 1; d <= 6; ++d) {
    for (int k = 1; d * k <= 6; ++k) CHECK(loaded.spec.value(d, k) == spec.value(d, k));
  }
}

TEST_CASE("chi files are validated against kappa") {
  CHECK_NOTHROW(io::chi_from_json(io::Json::parse(R"({"kappa":1,"chi":[[1,0],[0,-1],[0.6,0.8]]})")));
  try {
    io::chi_from_json(io::Json::parse(R"({"kappa":1,"chi":[[1,0],[1.5,0]]})"));
    FAIL("expected rejection");
  } catch (const KappaViolation& e) {
    CHECK(e.index() == 2);
  }
  const auto forced = io::chi_from_json(io::Json::parse(R"({"kappa":1,"chi":[[1,0],[1.5,0]]})"), true);
  CHECK(forced.kappa() == 1.5);
  CHECK_THROWS_AS(io::chi_from_json(io::Json::parse(R"({"kappa":1})")), io::FormatError);
}

TEST_CASE("report schemas") {
  const auto rep = make_halasz_report(ChiSequence(std::vector<Complex>(5, 1.0), 1.0), 5, 1.0);
  std::vector<std::string> keys;
  const auto j = io::to_json(rep);
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"n", "kappa", "M_lower", "M_upper", "circle_max", "sigma_n", "abs_sigma_n",
                                         "bound_main", "verdict_main", "delta", "q", "bound_smooth",
                                         "verdict_smooth", "prop_m", "sigma_m", "bound_prop", "verdict_prop"});
  CHECK(io::halasz_csv_row(rep).rfind("5,1,", 0) == 0);

  const auto zero = ChiSequence(std::vector<Complex>(20, 0.0), 1.0);
  const auto cr = converse_criterion(zero, sigma_from_chi(zero, 20), 20, 0.5, 1.0, 1.0);
  CHECK(io::criterion_csv_row(cr).rfind("0.5,9,0,0,", 0) == 0);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("cli irreducibles and sigma") {
  const auto r = run_cli({"irreducibles", "--q", "2", "--d", "3"});
  CHECK(r.code == cli::kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0].rfind("# config: ", 0) == 0);
  CHECK(ls[1] == "q,d,count");
  CHECK(ls[2] == "2,3,2");

  const auto list = run_cli({"irreducibles", "--p", "2", "--d", "2", "--list"});
  CHECK(lines(list.out).size() == 5);

  const auto path = temp_file("ffh_chi.json", R"({"kappa":1,"chi":[[0,1],[0,1]]})");
  const auto s = run_cli({"sigma", "--chi", path.string()});
  CHECK(s.code == 0);
  CHECK(lines(s.out).back() == "2,-0.5,0.5,0.70710678118654757,2.3561944901923448");

  const auto bad = temp_file("ffh_bad.json", R"({"kappa":1,"chi":[[0,1],[2,0]]})");
  const auto rej = run_cli({"sigma", "--chi", bad.string()});
  CHECK(rej.code == cli::kExitError);
  CHECK(rej.err.find("2") != std::string::npos);
  CHECK(run_cli({"sigma", "--chi", bad.string(), "--force-kappa"}).code == 0);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli({}).code == cli::kExitError);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitError);
  CHECK(run_cli({"irreducibles", "--q", "2"}).code == cli::kExitError);
  CHECK(run_cli({"oracle-compare", "--p", "2", "--n", "30", "--spec", "one"}).code == cli::kExitError);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);

  const auto oc = run_cli({"oracle-compare", "--p", "2", "--n", "8", "--spec", "mobius"});
  CHECK(oc.code == cli::kExitOk);
  CHECK(lines(oc.out).back() == "2,8,mobius,0,0,256,,0,0,0");

  const auto vb = run_cli({"verify-bound", "--kappa", "1", "--n", "50", "--trials", "100", "--seed", "7"});
  CHECK(vb.code == cli::kExitOk);
  const auto rows = lines(vb.out);
  REQUIRE(rows.size() == 102);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].find(",pass,") != std::string::npos);

  const auto m = run_cli({"m", "--spec", "one", "--q", "3", "--n", "50", "--delta", "0.25", "--m", "20", "--format", "json"});
  CHECK(m.code == 0);
  const auto j = io::Json::parse(m.out);
  CHECK(j["config"]["version"] == cli::kToolVersion);
  CHECK(j["report"]["verdict_smooth"] == "pass");
  CHECK(j["report"]["verdict_prop"] == "pass");
}

TEST_CASE("cli output is deterministic") {
  const std::vector<std::string> args{"verify-bound", "--kappa", "2", "--n", "20", "--n-max", "22",
                                      "--trials", "5", "--seed", "3", "--m", "5"};
  CHECK(run_cli(args).out == run_cli(args).out);
  const std::vector<std::string> sh{"sharp-example", "--delta", "0.3", "--n", "100", "--n", "200"};
  const auto a = run_cli(sh), b = run_cli(sh);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto out = std::filesystem::temp_directory_path() / "ffh_out.csv";
  CHECK(run_cli({"chi", "--spec", "random", "--q", "2", "--n", "10", "--seed", "4", "--out", out.string()}).code == 0);
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("# config: ", 0) == 0);
}
