// volterra: solve y^{m+1} = ∫₀ˣ K(x,t) y(t) dt, run convergence studies and
// oracle checks, and regenerate the convergence tables.
//
//   volterra solve    --kernel "exp(x-t)" --m 2 --X 1 --N 256 --out sol.csv
//   volterra converge --example 1 --m 2 --X 0.001 --out conv.csv
//   volterra verify   --suite recurrence
//   volterra repro    --example 1

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "volterra/app.hpp"

namespace {

struct Flags {
  std::string config;
  std::string kernel;
  double m = 0.0;
  double X = 0.0;
  long long N = 0;
  double eval_point = 0.0;
  bool richardson = false;
  std::string out;
  int example = 0;
  std::string suite;
  std::string first_panel;
  int max_depth = 0;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key=value file; flags override its entries");
  sub->add_option("--kernel", f.kernel, "builtin (constant, exp-convolution) or expression in x, t");
  sub->add_option("--m", f.m, "exponent m > 0");
  sub->add_option("--X", f.X, "interval end");
  sub->add_option("--N", f.N, "number of steps (even)");
  sub->add_option("--eval-point", f.eval_point, "evaluation point x* for convergence studies");
  sub->add_flag("--richardson", f.richardson, "Richardson-extrapolated starting value");
  sub->add_option("--out", f.out, "output CSV path");
  sub->add_option("--example", f.example, "model problem: 1 (K = 1) or 2 (K = exp(x-t))")
      ->check(CLI::IsMember({1, 2}));
  sub->add_option("--suite", f.suite, "verify suite name or 'all'");
  sub->add_option("--first-panel", f.first_panel, "odd-node rule on [0,h]: power-law or trapezoid");
  sub->add_option("--max-depth", f.max_depth, "finest level j of h = x*/2^j");
}

volterra::RunConfig build_config(volterra::Command command, CLI::App* sub, const Flags& f) {
  volterra::RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::runtime_error("cannot read config file " + f.config);
    volterra::apply_config_entries(cfg, volterra::read_config_entries(in));
  }
  cfg.command = command;
  auto given = [sub](const char* name) { return sub->count(name) > 0; };
  if (given("--kernel")) cfg.kernel = f.kernel;
  if (given("--m")) cfg.m = f.m;
  if (given("--X")) cfg.X = f.X;
  if (given("--N")) cfg.N = f.N;
  if (given("--eval-point")) cfg.eval_point = f.eval_point;
  if (given("--richardson")) cfg.richardson = f.richardson;
  if (given("--out")) cfg.output_path = f.out;
  if (given("--example")) cfg.example = f.example;
  if (given("--suite")) cfg.suite = f.suite;
  if (given("--first-panel")) cfg.first_panel = volterra::parse_first_panel(f.first_panel);
  if (given("--max-depth")) cfg.max_depth = f.max_depth;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit midpoint solver for Volterra equations with power-type nonlinearity"};
  app.require_subcommand(1);
  Flags flags;
  struct Entry {
    volterra::Command command;
    CLI::App* sub;
  };
  const Entry entries[] = {
      {volterra::Command::solve, app.add_subcommand("solve", "solve on a uniform grid, write n,x,y,u")},
      {volterra::Command::converge,
       app.add_subcommand("converge", "step-halving study against an exact solution")},
      {volterra::Command::verify, app.add_subcommand("verify", "run oracle suites")},
      {volterra::Command::repro, app.add_subcommand("repro", "regenerate the convergence tables")},
  };
  for (const Entry& e : entries) add_common(e.sub, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const Entry& e : entries) {
      if (e.sub->parsed()) return volterra::run(build_config(e.command, e.sub, flags), std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
