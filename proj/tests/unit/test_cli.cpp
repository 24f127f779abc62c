#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "qtorus/cli.hpp"
#include "qtorus/element_io.hpp"
#include "qtorus/verify.hpp"

namespace fs = std::filesystem;
using qtorus::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qtorus_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == qtorus::cli::kUsage);
  CHECK(cli({"frobnicate"}).code == qtorus::cli::kUsage);
  CHECK(cli({"check", "--suite", "nope", "--out", scratch("usage").string()}).code == qtorus::cli::kUsage);
  CHECK(cli({"check", "--suite", "besov_equiv", "--p", "0.5", "--out", scratch("usage").string()}).code ==
        qtorus::cli::kUsage);
  CHECK(cli({"norm", "/nonexistent.json", "--space", "lp"}).code == qtorus::cli::kUsage);
  const Run v = cli({"--version"});
  CHECK(v.code == qtorus::cli::kPass);
  CHECK(v.out.find(qtorus::kToolVersion) != std::string::npos);
}

TEST_CASE("gen is deterministic and round-trips through info and norm") {
  const fs::path a = scratch("gen_a"), b = scratch("gen_b");
  const std::vector<std::string> common = {"gen", "--n", "3", "--seed", "4", "--deg", "3"};
  auto with = [&](const fs::path& dir) {
    auto args = common;
    args.insert(args.end(), {"--out", dir.string()});
    return args;
  };
  REQUIRE(cli(with(a)).code == 0);
  REQUIRE(cli(with(b)).code == 0);
  for (const char* f : {"sample_0000.json", "sample_0002.json", "sample_corpus.json"})
    CHECK(qtorus::read_text_file(a / f) == qtorus::read_text_file(b / f));
  const std::string file = (a / "sample_0001.json").string();
  const Run info = cli({"info", file});
  CHECK(info.code == 0);
  CHECK(info.out.find("degree") != std::string::npos);
  const Run lp = cli({"norm", file, "--space", "lp", "--p", "2"});
  CHECK(lp.code == 0);
  const double l2 = qtorus::read_element_file(file).l2_norm();
  CHECK(std::stod(lp.out.substr(lp.out.find_first_of("0123456789"))) == doctest::Approx(l2).epsilon(1e-9));
  CHECK(cli({"norm", file, "--space", "besov", "--alpha", "0.5", "--method", "heat", "--json"}).code == 0);
}

TEST_CASE("random-skew theta is skew-symmetric") {
  const fs::path dir = scratch("skew");
  REQUIRE(cli({"gen", "--n", "2", "--d", "3", "--theta-law", "random-skew", "--out", dir.string()}).code == 0);
  const qtorus::QElement x = qtorus::read_element_file(dir / "sample_0000.json");
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) CHECK(x.theta()(k, j) == -x.theta()(j, k));
  CHECK_FALSE(x.theta().is_commutative());
}

TEST_CASE("a multiplier outside its domain is a usage error") {
  const fs::path dir = scratch("domain");
  REQUIRE(cli({"gen", "--n", "1", "--out", dir.string()}).code == 0);
  const std::string file = (dir / "sample_0000.json").string();
  REQUIRE(qtorus::read_element_file(file).mean() != qtorus::Complex{});
  const Run r = cli({"norm", file, "--space", "lp", "--apply", "circular-poisson:r=0.5:k=1"});
  CHECK(r.code == qtorus::cli::kUsage);
  CHECK(r.err.find("|m| < 1") != std::string::npos);
}

TEST_CASE("check writes identical artifacts for identical runs and replays its config") {
  const fs::path a = scratch("check_a"), b = scratch("check_b"), c = scratch("check_c");
  const std::vector<std::string> args = {"check", "--suite", "lifting", "--n", "4", "--deg", "3", "--seed", "9"};
  auto with = [&](const fs::path& dir) {
    auto v = args;
    v.insert(v.end(), {"--out", dir.string()});
    return v;
  };
  REQUIRE(cli(with(a)).code == 0);
  REQUIRE(cli(with(b)).code == 0);
  for (const char* f : {"lifting.csv", "lifting.summary.json", "lifting.witness.json"})
    CHECK(qtorus::read_text_file(a / f) == qtorus::read_text_file(b / f));
  REQUIRE(cli({"check", "--config", (a / "lifting.summary.json").string(), "--out", c.string()}).code == 0);
  CHECK(qtorus::read_text_file(a / "lifting.csv") == qtorus::read_text_file(c / "lifting.csv"));
}

TEST_CASE("a failing bound exits with 1") {
  const fs::path dir = scratch("fail");
  const Run r = cli({"check", "--suite", "sandwich", "--n", "3", "--param", "constant=0.5", "--out", dir.string()});
  CHECK(r.code == qtorus::cli::kMathFailure);
  CHECK(fs::exists(dir / "sandwich.witness.json"));
}

TEST_CASE("sweep writes one run per grid point") {
  const fs::path dir = scratch("sweep");
  const Run r = cli({"sweep", "--suite", "poincare", "--n", "2", "--grid", "seed=1,2", "--grid", "deg=2,3", "--out",
                     dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "run_003" / "poincare.csv"));
  CHECK_FALSE(fs::exists(dir / "run_004"));
  const std::string table = qtorus::read_text_file(dir / "sweep.csv");
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);
}

TEST_CASE("suites lists every suite") {
  const Run r = cli({"suites"});
  CHECK(r.code == 0);
  CHECK(static_cast<std::size_t>(std::count(r.out.begin(), r.out.end(), '\n')) == qtorus::suite_names().size());
}
