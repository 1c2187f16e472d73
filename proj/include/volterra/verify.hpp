#pragma once

// Desk-scale oracle suites behind `volterra verify`. Each check records the
// observed quantity next to the threshold it was held to.

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra/analysis.hpp"
#include "volterra/csv.hpp"
#include "volterra/oracles.hpp"
#include "volterra/quad.hpp"
#include "volterra/solver.hpp"

namespace volterra {

struct CheckResult {
  std::string suite;
  std::string check;
  double observed;
  double threshold;
  bool passed;
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"zeta",     "recurrence", "gronwall",   "iteration",
                                              "bracketing", "consistency", "start"};
  return names;
}

namespace detail {

inline void add_le(std::vector<CheckResult>& out, const std::string& suite, std::string check,
                   double observed, double threshold) {
  out.push_back({suite, std::move(check), observed, threshold, observed <= threshold});
}

inline std::string label(const char* fmt, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

inline std::string label(const char* fmt, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

inline void verify_zeta(std::vector<CheckResult>& out) {
  const std::string s = "zeta";
  add_le(out, s, "|zeta(0.5) + 1.4603545088|", std::abs(zeta_open_interval(0.5) + 1.4603545088), 1e-8);
  for (int i = 1; i <= 20; ++i) {
    const double A = i / 21.0;
    const double z = zeta_open_interval(1.0 - A);
    add_le(out, s, label("|cvz - euler_maclaurin| at s=%.4f", 1.0 - A),
           std::abs(z - zeta_euler_maclaurin(1.0 - A)), 1e-9);
    // -1 < A zeta(1-A) < 0, reported as max(A zeta, -1 - A zeta) < 0.
    add_le(out, s, label("bracket -1 < A*zeta(1-A) < 0 at A=%.4f", A),
           std::max(A * z, -1.0 - A * z), -1e-15);
  }
}

inline void verify_recurrence(std::vector<CheckResult>& out) {
  for (double A : {0.25, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    const RecurrenceBound bound = recurrence_bound(A, 1.0, 1.0);
    const std::vector<double> e = simulate_recurrence(A, 1.0, 1.0, 100000);
    double worst = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      worst = std::max(worst, e[k] * std::pow(static_cast<double>(k + 1), bound.exponent));
    }
    add_le(out, "recurrence", label("max e_n n^{1-A} / M, A=%g", A), worst / bound.M, 1.0 + 1e-12);
  }
}

inline void verify_gronwall(std::vector<CheckResult>& out) {
  const std::string s = "gronwall";
  for (double m : {1.0, 1.5, 2.0, 10.0, 100.0}) {
    double worst = 0.0;
    for (double x : {1e-6, 1e-3, 0.1, 0.5, 1.0}) {
      const double ref = exact_example1(m, x);
      worst = std::max(worst, std::abs(gronwall_bound(1.0, 0.0, 0.0, m, x) - ref) / ref);
    }
    add_le(out, s, label("gronwall(1,0,0,m,x) vs exact, m=%g", m), worst, 1e-14);
    double below = -1.0;
    for (int i = 1; i <= 100; ++i) {
      const double x = 1e-5 * i;
      below = std::max(below, gronwall_bound(1.0, 0.0, 0.0, m, x) - exact_example2(m, x));
    }
    add_le(out, s, label("gronwall lower bound <= exact_example2, m=%g", m), below, 0.0);
  }
  for (double m : {1.0, 2.0, 10.0}) {
    const double x = 1e-6;
    const double ratio = exact_example2(m, x) / asymptotic_form(1.0, 0.0, m)(x);
    add_le(out, s, label("|exact_example2 / asymptotic - 1| at x=1e-6, m=%g", m), std::abs(ratio - 1.0),
           1e-3);
  }
}

inline void verify_iteration(std::vector<CheckResult>& out) {
  for (double m : {1.0, 2.0, 10.0}) {
    for (double h : {1e-2, 1e-3}) {
      const auto N = static_cast<long long>(std::llround(1.0 / h));
      const ProblemSpec spec(m, constant_kernel(1.0), 1.0);
      const Grid grid = make_grid(1.0, N);
      const double eps = epsilon_max(grid.h(), m, grid.N());
      const double ratio = eps * std::pow(grid.h(), -(m + 1.0) / m);
      add_le(out, "iteration", label("eps(h) h^{-(m+1)/m}, m=%g h=%g", m, h), ratio, 0.6);
      const Solution sol = solve(SolverConfig{spec, grid});
      double worst = -1.0;
      for (std::size_t n = 2; n <= grid.N(); ++n) {
        const double lb = iteration_lower_bound(1.0, m, grid.h(), eps, n).value;
        worst = std::max(worst, (lb - sol.values[n]) / lb);
      }
      add_le(out, "iteration", label("max (bound - y_n)/bound, m=%g h=%g", m, h), worst, 0.0);
    }
  }
}

inline void verify_bracketing(std::vector<CheckResult>& out, int max_depth) {
  for (double m : {1.0, 2.0, 10.0}) {
    double worst = -1.0;
    const ExactSolution exact = example_solution(1, m);
    const ProblemSpec spec(m, constant_kernel(1.0), 1.0);
    for (int j = 1; j <= max_depth; ++j) {
      const Grid grid = make_grid(1.0, 1LL << j);
      const Solution sol = solve(SolverConfig{spec, grid});
      const BracketDirection dir =
          bracket_direction(midpoint_rule(m).delta_sign(), sol.values[1], exact(grid.h()));
      const BracketReport r = check_bracketing(sol, exact, dir);
      if (r.skipped) {
        worst = std::numeric_limits<double>::infinity();
        break;
      }
      worst = std::max(worst, r.worst_violation);
    }
    add_le(out, "bracketing", label("worst y(x_n) - y_n, m=%g", m), worst, 1e-13);
  }
}

inline void verify_consistency(std::vector<CheckResult>& out) {
  for (double m : {1.0, 2.0, 10.0}) {
    const ProblemSpec spec(m, constant_kernel(1.0), 1.0);
    const Grid grid = make_grid(1.0, 100);
    const ConsistencyReport rep = delta_report(example_solution(1, m), spec, grid, midpoint_rule(m));
    const double top = *std::max_element(rep.per_node.begin() + 2, rep.per_node.end());
    add_le(out, "consistency", label("max delta_n (expected <= 0), m=%g", m), top, 1e-14);
  }
  for (double m : {2.0, 10.0}) {
    for (double h : {1e-2, 1e-3}) {
      const auto N = static_cast<std::size_t>(std::llround(1.0 / h));
      const double ratio = epsilon_max(h, m, N) * std::pow(h, -(m + 1.0) / m);
      add_le(out, "consistency", label("eps(h) h^{-(m+1)/m} < 1, m=%g h=%g", m, h), ratio, 1.0 - 1e-12);
    }
  }
}

/// The rectangle start satisfies the iterate lower bound's starting
/// hypothesis for the built-in kernels.
inline void verify_start(std::vector<CheckResult>& out) {
  for (int example : {1, 2}) {
    for (double m : {1.0, 2.0, 10.0, 100.0}) {
      for (long long N : {100LL, 1000LL}) {
        const ProblemSpec spec(m, example_kernel(example), 1.0);
        const Grid grid = make_grid(1.0, N);
        const double y1 = initial_value(spec, grid.h());
        const double eps = epsilon_max(grid.h(), m, grid.N());
        const double lb = iteration_lower_bound(spec.bounds().lower, m, grid.h(), eps, 1).value;
        add_le(out, "start",
               label("(bound - y_1)/y_1, example %g, m=%g", static_cast<double>(example), m) +
                   " N=" + std::to_string(N),
               (lb - y1) / y1, 0.0);
      }
    }
  }
}

}  // namespace detail

inline std::vector<CheckResult> run_verify_suite(const std::string& suite, int bracket_depth = 12) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* name) {
    const bool hit = all || suite == name;
    known = known || hit;
    return hit;
  };
  if (want("zeta")) detail::verify_zeta(out);
  if (want("recurrence")) detail::verify_recurrence(out);
  if (want("gronwall")) detail::verify_gronwall(out);
  if (want("iteration")) detail::verify_iteration(out);
  if (want("bracketing")) detail::verify_bracketing(out, bracket_depth);
  if (want("consistency")) detail::verify_consistency(out);
  if (want("start")) detail::verify_start(out);
  if (!known) throw std::invalid_argument("unknown verify suite '" + suite + "'");
  return out;
}

inline void write_verify_csv(std::ostream& os, const std::vector<CheckResult>& results) {
  os << "suite,check,observed,threshold,status\n";
  for (const CheckResult& r : results) {
    os << r.suite << ",\"" << r.check << "\"," << csv::number(r.observed) << ','
       << csv::number(r.threshold) << ',' << (r.passed ? "pass" : "FAIL") << '\n';
  }
}

}  // namespace volterra
