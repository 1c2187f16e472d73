#pragma once

/**
 * @file analysis.hpp
 * @brief Exact solutions, pointwise errors, empirical and theoretical
 *        convergence orders.
 *
 * Convergence studies solve on [0, x*] with h_j = x* / 2^j so that the
 * evaluation point is always the last grid node; errors are never
 * interpolated.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra/csv.hpp"
#include "volterra/model.hpp"
#include "volterra/quad.hpp"
#include "volterra/solver.hpp"

namespace volterra {

using ExactSolution = std::function<double(double)>;

/// y(x) = (m/(m+1) x)^{1/m}, the solution for K ≡ 1.
inline double exact_example1(double m, double x) {
  if (!(m > 0.0) || x < 0.0) throw std::invalid_argument("exact_example1: need m > 0, x >= 0");
  return std::pow(m / (m + 1.0) * x, 1.0 / m);
}

/// y(x) = e^{x/(m+1)} (1 - e^{-m x/(m+1)})^{1/m}, the solution for K = e^{x-t}.
inline double exact_example2(double m, double x) {
  if (!(m > 0.0) || x < 0.0) throw std::invalid_argument("exact_example2: need m > 0, x >= 0");
  return std::exp(x / (m + 1.0)) * std::pow(-std::expm1(-m * x / (m + 1.0)), 1.0 / m);
}

inline ExactSolution example_solution(int example, double m) {
  switch (example) {
    case 1: return [m](double x) { return exact_example1(m, x); };
    case 2: return [m](double x) { return exact_example2(m, x); };
    default: throw std::invalid_argument("example must be 1 or 2");
  }
}

inline Kernel example_kernel(int example) {
  switch (example) {
    case 1: return constant_kernel(1.0);
    case 2: return exp_convolution_kernel();
    default: throw std::invalid_argument("example must be 1 or 2");
  }
}

/// Index of x on the grid, or nullopt when x is not a node.
inline std::optional<std::size_t> node_index(const Grid& grid, double x) {
  const double r = x / grid.h();
  if (!(r >= 0.0) || r > static_cast<double>(grid.N()) + 0.5) return std::nullopt;
  const auto n = static_cast<std::size_t>(std::llround(r));
  if (std::abs(grid.node(n) - x) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) {
    return std::nullopt;
  }
  return n;
}

/// |y(x*) - y_{n*}| at the grid node x* = n* h.
inline double error_at(const Solution& sol, const ExactSolution& exact, double x) {
  const auto n = node_index(sol.grid, x);
  if (!n) throw std::invalid_argument("error_at: evaluation point is not a grid node");
  return std::abs(exact(sol.grid.node(*n)) - sol.values[*n]);
}

struct ErrorSample {
  double h;
  double error;
  double steps = 1.0;  ///< rounding in the recursion accumulates linearly in N
};

struct OrderFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
  /// Every sample sat at the rounding floor: the scheme is exact here.
  bool exact = false;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

/// Least-squares slope of ln e against ln h. Samples with
/// e < 100 * machine epsilon * scale * steps are treated as exact and left out.
inline OrderFit estimate_order(std::span<const ErrorSample> samples, double scale = 1.0) {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * std::abs(scale);
  std::vector<double> lx;
  std::vector<double> ly;
  OrderFit fit;
  for (const ErrorSample& s : samples) {
    if (!(s.h > 0.0)) throw std::invalid_argument("estimate_order: step sizes must be positive");
    if (!(s.error >= floor * std::max(1.0, s.steps))) {
      ++fit.excluded;
      continue;
    }
    lx.push_back(std::log(s.h));
    ly.push_back(std::log(s.error));
  }
  fit.used = lx.size();
  if (fit.used == 0 && !samples.empty()) {
    fit.exact = true;
    return fit;
  }
  if (fit.used < 2) throw std::invalid_argument("estimate_order: need at least two usable samples");

  const double n = static_cast<double>(fit.used);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < fit.used; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < fit.used; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("estimate_order: step sizes must be distinct");
  fit.slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < fit.used; ++i) {
    const double r = ly[i] - (my + fit.slope * (lx[i] - mx));
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

/// Exponent of the a-priori rate bound
///   h^{1 - (1/m) W D / (C E)} max{h^p, δ(h)/h},
/// i.e. 1 - WD/(m C E) + min(p, delta_exp - 1). E = 1 is the δ_n <= 0 case.
/// A nonpositive result means the bound guarantees nothing.
inline double theoretical_order(double m, double W, double D, double C, double p, double delta_exp,
                                double E = 1.0) {
  if (!(m > 0.0) || !(W > 0.0) || !(D > 0.0) || !(C > 0.0) || !(p > 0.0) || !(delta_exp > 0.0) ||
      !(E > 0.0)) {
    throw std::invalid_argument("theoretical_order: all arguments must be positive");
  }
  return 1.0 - (W * D) / (m * C * E) + std::min(p, delta_exp - 1.0);
}

inline bool order_guaranteed(double theoretical) { return theoretical > 0.0; }

/// y(x) ~ coeff * x^exponent as x -> 0+ for K(x,t) ~ C x^μ.
struct AsymptoticForm {
  double coeff;
  double exponent;

  double operator()(double x) const { return coeff * std::pow(x, exponent); }
};

inline AsymptoticForm asymptotic_form(double C, double mu, double m) {
  if (!(C > 0.0) || mu < 0.0 || !(m > 0.0)) {
    throw std::invalid_argument("asymptotic_form: need C > 0, mu >= 0, m > 0");
  }
  const double base = C * (m / (m + 1.0)) / (1.0 + mu / (m + 1.0));
  return {std::pow(base, 1.0 / m), (1.0 + mu) / m};
}

struct SweepSample {
  double h;
  std::size_t N;
  double error;
};

struct ConvergenceReport {
  double eval_point = 0.0;
  double m = 0.0;
  std::vector<SweepSample> samples;
  OrderFit fit;
  double theoretical_order = std::numeric_limits<double>::quiet_NaN();
  /// Set when a solve failed; samples then hold the runs completed before it.
  std::optional<std::string> failure;
};

struct SweepOptions {
  FirstPanel first_panel = FirstPanel::power_law;
  bool richardson = false;
};

/// Solves on [0, x*] with N = 2^j for each depth j and fits the order of
/// |y(x*) - y_N|. The attached theoretical order uses W = 2, the kernel
/// bounds on [0, x*], p = 1/m and δ(h) ~ h^{1+1/m}.
inline ConvergenceReport convergence_sweep(const ProblemSpec& spec, double eval_point,
                                           std::span<const int> depths, const ExactSolution& exact,
                                           SweepOptions options = {}) {
  if (!(eval_point > 0.0)) throw std::invalid_argument("convergence_sweep: x* must be positive");
  const ProblemSpec local = spec.on_interval(eval_point);
  const double m = spec.m();
  ConvergenceReport report;
  report.eval_point = eval_point;
  report.m = m;
  const KernelBounds b = local.bounds();
  report.theoretical_order = theoretical_order(m, 2.0, b.upper, b.lower, 1.0 / m, 1.0 + 1.0 / m);

  for (int j : depths) {
    if (j < 1 || j > 40) throw std::invalid_argument("convergence_sweep: depths must lie in 1..40");
    const long long N = 1LL << j;
    try {
      const Grid grid = make_grid(eval_point, N);
      SolverConfig cfg{local, grid};
      cfg.first_panel = options.first_panel;
      cfg.richardson = options.richardson;
      const Solution sol = solve(cfg);
      report.samples.push_back({grid.h(), grid.N(), error_at(sol, exact, eval_point)});
    } catch (const std::exception& e) {
      report.failure = "depth " + std::to_string(j) + ": " + e.what();
      break;
    }
  }

  std::vector<ErrorSample> es;
  for (const SweepSample& s : report.samples) es.push_back({s.h, s.error, static_cast<double>(s.N)});
  try {
    report.fit = estimate_order(es, exact(eval_point));
  } catch (const std::invalid_argument& e) {
    if (!report.failure) report.failure = e.what();
  }
  return report;
}

inline void write_csv(std::ostream& os, const ConvergenceReport& r) {
  os << "h,N,error,log10_h,log10_error\n";
  for (const SweepSample& s : r.samples) {
    os << csv::number(s.h) << ',' << s.N << ',' << csv::number(s.error) << ','
       << csv::number(std::log10(s.h)) << ',' << csv::number(std::log10(s.error)) << '\n';
  }
  os << "# eval_point=" << csv::number(r.eval_point) << '\n';
  os << "# m=" << csv::number(r.m) << '\n';
  if (r.fit.exact) {
    os << "# fitted_order=exact\n";
  } else {
    os << "# fitted_order=" << csv::number(r.fit.slope) << '\n';
    os << "# regression_r2=" << csv::number(r.fit.r2) << '\n';
  }
  os << "# theoretical_order=" << csv::number(r.theoretical_order) << '\n';
  if (!order_guaranteed(r.theoretical_order)) os << "# theoretical_bound=no guarantee\n";
  if (r.failure) os << "# failure=" << *r.failure << '\n';
}

}  // namespace volterra
