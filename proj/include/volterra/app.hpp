#pragma once

// Command dispatch for the `volterra` tool, kept free of any argument-parser
// dependency so that it can be driven directly from tests.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra/analysis.hpp"
#include "volterra/csv.hpp"
#include "volterra/expression.hpp"
#include "volterra/repro.hpp"
#include "volterra/solver.hpp"
#include "volterra/verify.hpp"

namespace volterra {

enum class Command { solve, converge, verify, repro };

inline Command parse_command(const std::string& s) {
  if (s == "solve") return Command::solve;
  if (s == "converge") return Command::converge;
  if (s == "verify") return Command::verify;
  if (s == "repro") return Command::repro;
  throw std::invalid_argument("unknown command '" + s + "'");
}

struct RunConfig {
  Command command = Command::solve;
  std::optional<std::string> kernel;  ///< builtin name or expression
  double m = 2.0;
  double X = 1.0;
  long long N = 64;
  std::optional<double> eval_point;
  std::optional<int> example;
  bool richardson = false;
  FirstPanel first_panel = FirstPanel::power_law;
  int max_depth = kTableMaxDepth;
  std::string suite = "all";
  std::optional<std::string> output_path;
};

/// key=value lines; blank lines and lines starting with '#' are ignored.
inline std::map<std::string, std::string> read_config_entries(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    entries[key] = trim(line.substr(eq + 1));
  }
  return entries;
}

inline FirstPanel parse_first_panel(const std::string& s) {
  if (s == "power-law" || s == "power") return FirstPanel::power_law;
  if (s == "trapezoid") return FirstPanel::trapezoid;
  throw std::invalid_argument("first panel must be 'power-law' or 'trapezoid', got '" + s + "'");
}

inline void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    try {
      if (key == "command") {
        cfg.command = parse_command(value);
      } else if (key == "kernel") {
        cfg.kernel = value;
      } else if (key == "m") {
        cfg.m = std::stod(value);
      } else if (key == "X") {
        cfg.X = std::stod(value);
      } else if (key == "N") {
        cfg.N = std::stoll(value);
      } else if (key == "eval_point") {
        cfg.eval_point = std::stod(value);
      } else if (key == "example") {
        cfg.example = std::stoi(value);
      } else if (key == "richardson") {
        cfg.richardson = value == "true" || value == "1" || value == "yes";
      } else if (key == "first_panel") {
        cfg.first_panel = parse_first_panel(value);
      } else if (key == "max_depth") {
        cfg.max_depth = std::stoi(value);
      } else if (key == "suite") {
        cfg.suite = value;
      } else if (key == "out") {
        cfg.output_path = value;
      } else {
        throw std::invalid_argument("unknown key");
      }
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("config key '" + key + "' = '" + value + "': " + e.what());
    }
  }
}

inline Kernel resolve_kernel(const RunConfig& cfg) {
  if (!cfg.kernel) {
    if (cfg.example) return example_kernel(*cfg.example);
    return constant_kernel(1.0);
  }
  const std::string& k = *cfg.kernel;
  if (k == "example1" || k == "constant") return constant_kernel(1.0);
  if (k == "example2" || k == "exp-convolution") return exp_convolution_kernel();
  return parse_kernel_expression(k);
}

namespace detail {

/// Writes through `path.partial`; the file is renamed to `path` only when
/// the command succeeds.
class PartialFile {
 public:
  explicit PartialFile(std::filesystem::path path)
      : path_(std::move(path)), partial_(path_.string() + ".partial") {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    out_.open(partial_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open " + partial_.string() + " for writing");
  }

  std::ostream& stream() { return out_; }

  void commit() {
    out_.close();
    std::filesystem::rename(partial_, path_);
  }

  const std::filesystem::path& partial_path() const { return partial_; }

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
};

inline std::vector<int> depth_ladder(int max_depth) {
  if (max_depth < 1 || max_depth > 24) throw std::invalid_argument("max depth must lie in 1..24");
  std::vector<int> d(static_cast<std::size_t>(max_depth));
  for (int j = 1; j <= max_depth; ++j) d[static_cast<std::size_t>(j - 1)] = j;
  return d;
}

inline int run_solve(const RunConfig& cfg, std::ostream& log) {
  const ProblemSpec spec(cfg.m, resolve_kernel(cfg), cfg.X);
  SolverConfig sc{spec, make_grid(cfg.X, cfg.N)};
  sc.first_panel = cfg.first_panel;
  sc.richardson = cfg.richardson;
  PartialFile file(cfg.output_path.value_or("solution.csv"));
  std::ostream& os = file.stream();
  const Solution sol = solve(sc);
  const std::vector<double> u = to_original_form(sol);
  os << "# kernel=" << spec.kernel().name() << '\n';
  os << "# m=" << csv::number(spec.m()) << '\n';
  os << "# scheme=" << sol.meta.scheme << '\n';
  os << "# start=" << sol.meta.start_rule << '\n';
  for (const std::string& w : sol.meta.warnings) os << "# warning=" << w << '\n';
  os << "n,x,y,u\n";
  for (std::size_t n = 0; n < sol.values.size(); ++n) {
    os << n << ',' << csv::number(sol.grid.node(n)) << ',' << csv::number(sol.values[n]) << ','
       << csv::number(u[n]) << '\n';
  }
  for (const std::string& w : sol.meta.warnings) log << "warning: " << w << '\n';
  file.commit();
  log << "wrote " << cfg.output_path.value_or("solution.csv") << " (" << sol.values.size()
      << " nodes)\n";
  return 0;
}

inline int run_converge(const RunConfig& cfg, std::ostream& log) {
  if (!cfg.example) throw std::invalid_argument("converge needs --example 1|2 for the exact solution");
  const double x = cfg.eval_point.value_or(cfg.X);
  if (x > cfg.X) throw std::invalid_argument("eval point must not exceed X");
  const ProblemSpec spec(cfg.m, resolve_kernel(cfg), cfg.X);
  const std::vector<int> depths = depth_ladder(cfg.max_depth);
  const ConvergenceReport report = convergence_sweep(spec, x, depths, example_solution(*cfg.example, cfg.m),
                                                     {cfg.first_panel, cfg.richardson});
  const std::string path = cfg.output_path.value_or("convergence.csv");
  PartialFile file(path);
  write_csv(file.stream(), report);
  if (report.failure) {
    log << "error: " << *report.failure << "; partial results in " << file.partial_path().string()
        << '\n';
    return 1;
  }
  file.commit();
  if (report.fit.exact) {
    log << "fitted order: exact\n";
  } else {
    log << "fitted order: " << report.fit.slope << " (r2 " << report.fit.r2 << ")\n";
  }
  log << "theoretical order: " << report.theoretical_order << '\n';
  return 0;
}

inline int run_verify(const RunConfig& cfg, std::ostream& log) {
  const std::vector<CheckResult> results = run_verify_suite(cfg.suite);
  const std::string path = cfg.output_path.value_or("verify.csv");
  PartialFile file(path);
  write_verify_csv(file.stream(), results);
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    if (!r.passed) {
      ++failed;
      log << "FAIL " << r.suite << ": " << r.check << " observed " << r.observed << " threshold "
          << r.threshold << '\n';
    }
  }
  log << results.size() - failed << '/' << results.size() << " checks passed\n";
  if (failed > 0) return 1;
  file.commit();
  return 0;
}

inline int run_repro(const RunConfig& cfg, std::ostream& log) {
  std::vector<int> examples;
  if (cfg.example) {
    examples.push_back(*cfg.example);
  } else {
    examples = {1, 2};
  }
  int status = 0;
  for (int ex : examples) {
    const ReproTable table = reproduce_table(ex, cfg.first_panel, cfg.max_depth);
    std::string path = "repro_example" + std::to_string(ex) + ".csv";
    if (cfg.output_path) {
      path = examples.size() == 1 ? *cfg.output_path
                                  : *cfg.output_path + "." + std::to_string(ex);
    }
    PartialFile file(path);
    write_repro_csv(file.stream(), table);
    print_repro_table(log, table);
    if (table.ok()) {
      file.commit();
    } else {
      status = 1;
      log << "error: a sweep failed; partial table in " << file.partial_path().string() << '\n';
    }
  }
  return status;
}

}  // namespace detail

/// Runs one command. Returns 0 when the command succeeded and every oracle
/// check passed.
inline int run(const RunConfig& cfg, std::ostream& log = std::cerr) {
  if (cfg.N % 2 != 0) throw std::invalid_argument("N must be even");
  if (cfg.eval_point && *cfg.eval_point > cfg.X && cfg.command != Command::repro) {
    throw std::invalid_argument("eval point must not exceed X");
  }
  switch (cfg.command) {
    case Command::solve: return detail::run_solve(cfg, log);
    case Command::converge: return detail::run_converge(cfg, log);
    case Command::verify: return detail::run_verify(cfg, log);
    case Command::repro: return detail::run_repro(cfg, log);
  }
  return 2;
}

}  // namespace volterra
