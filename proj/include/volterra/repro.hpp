#pragma once

// Convergence tables for the two model problems: K ≡ 1 and K = e^{x-t},
// evaluated at x* = 0.001 for m in {1, 1.5, 2, 10, 100, 1000}.

#include <array>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "volterra/analysis.hpp"
#include "volterra/csv.hpp"

namespace volterra {

inline constexpr std::array<double, 6> kTableExponents{1.0, 1.5, 2.0, 10.0, 100.0, 1000.0};
inline constexpr double kTableEvalPoint = 0.001;
inline constexpr int kTableMaxDepth = 12;

struct ReproColumn {
  double m;
  ConvergenceReport plain;       ///< rectangle-rule start
  ConvergenceReport richardson;  ///< Richardson-extrapolated start
  double est_order;
};

struct ReproTable {
  int example;
  double eval_point;
  FirstPanel first_panel;
  std::vector<ReproColumn> columns;

  bool ok() const {
    for (const ReproColumn& c : columns) {
      if (c.plain.failure || c.richardson.failure) return false;
    }
    return true;
  }
};

inline ReproTable reproduce_table(int example, FirstPanel first_panel = FirstPanel::power_law,
                                  int max_depth = kTableMaxDepth) {
  std::vector<int> depths(static_cast<std::size_t>(max_depth));
  std::iota(depths.begin(), depths.end(), 1);
  ReproTable table{example, kTableEvalPoint, first_panel, {}};
  for (double m : kTableExponents) {
    const ProblemSpec spec(m, example_kernel(example), kTableEvalPoint);
    const ExactSolution exact = example_solution(example, m);
    ReproColumn col{m,
                    convergence_sweep(spec, kTableEvalPoint, depths, exact, {first_panel, false}),
                    convergence_sweep(spec, kTableEvalPoint, depths, exact, {first_panel, true}),
                    0.0};
    col.est_order = col.plain.theoretical_order;
    table.columns.push_back(std::move(col));
  }
  return table;
}

namespace detail {

inline std::string order_cell(const ConvergenceReport& r) {
  if (r.failure) return "failed";
  return r.fit.exact ? "inf" : csv::number(r.fit.slope);
}

inline std::string order_text(const ConvergenceReport& r) {
  if (r.failure) return "failed";
  if (r.fit.exact) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r.fit.slope);
  return buf;
}

}  // namespace detail

/// One column per m; rows m, order (rectangle start), order (Richardson
/// start), est_order and whether the estimate guarantees convergence.
inline void write_repro_csv(std::ostream& os, const ReproTable& t) {
  os << "# example=" << t.example << '\n';
  os << "# eval_point=" << csv::number(t.eval_point) << '\n';
  os << "# first_panel=" << to_string(t.first_panel) << '\n';
  os << "# h_j=eval_point/2^j, j=1.." << (t.columns.empty() ? 0 : t.columns.front().plain.samples.size())
     << '\n';
  os << "quantity";
  for (const ReproColumn& c : t.columns) os << ',' << csv::number(c.m);
  os << "\norder";
  for (const ReproColumn& c : t.columns) os << ',' << detail::order_cell(c.plain);
  os << "\norder_richardson_start";
  for (const ReproColumn& c : t.columns) os << ',' << detail::order_cell(c.richardson);
  os << "\nest_order";
  for (const ReproColumn& c : t.columns) os << ',' << csv::number(c.est_order);
  os << "\nest_order_guaranteed";
  for (const ReproColumn& c : t.columns) os << ',' << (order_guaranteed(c.est_order) ? "true" : "false");
  os << '\n';
}

/// The same table rounded to three decimals, laid out for a terminal.
inline void print_repro_table(std::ostream& os, const ReproTable& t) {
  auto cell = [&os](const std::string& s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%10s", s.c_str());
    os << buf;
  };
  os << "Example " << t.example << " at x = " << t.eval_point << " (first panel: "
     << to_string(t.first_panel) << ")\n";
  os << "m                    ";
  for (const ReproColumn& c : t.columns) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", c.m);
    cell(buf);
  }
  os << "\nOrder                ";
  for (const ReproColumn& c : t.columns) cell(detail::order_text(c.plain));
  os << "\nOrder (Richardson y1)";
  for (const ReproColumn& c : t.columns) cell(detail::order_text(c.richardson));
  os << "\nEst. order           ";
  for (const ReproColumn& c : t.columns) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", c.est_order);
    cell(order_guaranteed(c.est_order) ? buf : "--");
  }
  os << '\n';
}

}  // namespace volterra
