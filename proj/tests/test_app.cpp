#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "volterra/app.hpp"

using namespace volterra;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "volterra_test_app";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  fs::remove(p.string() + ".partial");
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config entries", "[cli]") {
  std::istringstream in("# comment\nkernel = exp(x-t)\nm=3\neval-point=0.5\n\nrichardson=true\n");
  RunConfig cfg;
  apply_config_entries(cfg, read_config_entries(in));
  CHECK(cfg.kernel == "exp(x-t)");
  CHECK(cfg.m == 3.0);
  CHECK(cfg.eval_point == 0.5);
  CHECK(cfg.richardson);

  std::istringstream bad("m 3\n");
  CHECK_THROWS_AS(read_config_entries(bad), std::invalid_argument);
  RunConfig c2;
  CHECK_THROWS_AS(apply_config_entries(c2, {{"colour", "red"}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entries(c2, {{"m", "two"}}), std::invalid_argument);
}

TEST_CASE("solve command writes n,x,y,u", "[cli]") {
  const fs::path out = scratch("solve.csv");
  RunConfig cfg;
  cfg.kernel = "1";
  cfg.m = 1.0;
  cfg.X = 1.0;
  cfg.N = 8;
  cfg.richardson = true;
  cfg.output_path = out.string();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  const std::string csv = slurp(out);
  CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("n,x,y,u\n"));
  const std::string last = csv.substr(csv.rfind("\n8,") + 1);
  std::istringstream row(last);
  std::string n, x, y, u;
  std::getline(row, n, ',');
  std::getline(row, x, ',');
  std::getline(row, y, ',');
  std::getline(row, u);
  CHECK(std::stod(x) == 1.0);
  CHECK(std::stod(y) == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(std::stod(u) == Catch::Approx(0.25).epsilon(1e-14));
  CHECK_FALSE(fs::exists(out.string() + ".partial"));
}

TEST_CASE("invalid requests are rejected", "[cli]") {
  std::ostringstream log;
  RunConfig odd;
  odd.N = 7;
  CHECK_THROWS_WITH(run(odd, log), Catch::Matchers::ContainsSubstring("even"));
  RunConfig beyond;
  beyond.command = Command::converge;
  beyond.example = 1;
  beyond.eval_point = 2.0;
  CHECK_THROWS(run(beyond, log));
  RunConfig noexample;
  noexample.command = Command::converge;
  CHECK_THROWS(run(noexample, log));
  RunConfig badkernel;
  badkernel.kernel = "x - t - 1";
  badkernel.output_path = scratch("bad.csv").string();
  CHECK_THROWS_AS(run(badkernel, log), invalid_kernel);
  CHECK_FALSE(fs::exists(*badkernel.output_path));
}

TEST_CASE("converge command", "[cli]") {
  const fs::path out = scratch("conv.csv");
  RunConfig cfg;
  cfg.command = Command::converge;
  cfg.example = 2;
  cfg.m = 2.0;
  cfg.X = 0.001;
  cfg.max_depth = 6;
  cfg.output_path = out.string();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  CHECK_THAT(slurp(out), Catch::Matchers::ContainsSubstring("# fitted_order="));
  CHECK_THAT(log.str(), Catch::Matchers::ContainsSubstring("theoretical order"));
}

TEST_CASE("verify and repro commands", "[cli]") {
  std::ostringstream log;
  RunConfig v;
  v.command = Command::verify;
  v.suite = "zeta";
  v.output_path = scratch("verify.csv").string();
  REQUIRE(run(v, log) == 0);
  CHECK(slurp(*v.output_path).rfind("suite,check,observed,threshold,status\n", 0) == 0);

  RunConfig r;
  r.command = Command::repro;
  r.example = 1;
  r.max_depth = 4;
  r.output_path = scratch("repro.csv").string();
  REQUIRE(run(r, log) == 0);
  const std::string a = slurp(*r.output_path);
  REQUIRE(run(r, log) == 0);
  CHECK(a == slurp(*r.output_path));
  CHECK_THAT(log.str(), Catch::Matchers::ContainsSubstring("Est. order"));
}
