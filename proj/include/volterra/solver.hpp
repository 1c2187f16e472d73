#pragma once

// Explicit iteration for y^{m+1} = ∫₀ˣ K y: y_0 = 0, a positive start y_1
// (which steers the iteration away from the trivial solution), then
// y_n = (h Σ w_{n,i} K_{n,i} y_i)^{1/(m+1)} for n = 2..N.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra/error.hpp"
#include "volterra/integrate.hpp"
#include "volterra/model.hpp"
#include "volterra/numeric.hpp"
#include "volterra/oracles.hpp"
#include "volterra/quad.hpp"

namespace volterra {

struct SolverConfig {
  ProblemSpec spec;
  Grid grid;
  /// Empty selects the midpoint scheme with `first_panel`.
  std::optional<WeightRule> rule = std::nullopt;
  FirstPanel first_panel = FirstPanel::power_law;
  bool richardson = false;
  /// Replaces the computed start. Zero is accepted and yields the trivial
  /// solution y ≡ 0.
  std::optional<double> start_override = std::nullopt;
};

/// y_1 = (∫₀ʰ K(h,t) dt)^{1/m}. Since y is increasing, y(h)^{m+1} <=
/// y(h) ∫₀ʰ K(h,t) dt, so this start never undershoots y(h).
inline double initial_value(const ProblemSpec& spec, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("initial_value: h must be positive");
  const Kernel& K = spec.kernel();
  double integral = 0.0;
  if (K.has_row_integral()) {
    integral = K.row_integral(h);
  } else {
    integral = integrate_adaptive([&](double t) { return K(h, t); }, 0.0, h,
                                  QuadratureTolerance{0.0, 1e-14, 40});
  }
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    std::ostringstream os;
    os << "initial_value: ∫₀ʰ K(h,t) dt = " << integral << " is not positive";
    throw invalid_kernel(os.str());
  }
  return positive_root(integral, spec.m());
}

struct RichardsonStart {
  double value;
  double extrapolated;  ///< before clamping
  double floor;         ///< lower bound the value is clamped to
  bool clamped = false;
  bool fell_back = false;
  std::string warning;
};

/// Eliminates the leading h^{1/m} term of initial_value between steps h and
/// h/2, then clamps the result from below by the iterate lower bound
/// E(h) (C m/(m+1) h)^{1/m}, with E(h) computed from ε(h) of `rule` on `grid`.
inline RichardsonStart richardson_initial(const ProblemSpec& spec, const Grid& grid,
                                          const WeightRule& rule) {
  const double h = grid.h();
  const double m = spec.m();
  const double plain = initial_value(spec, h);
  const double q = 1.0 / m;
  const double factor = std::exp2(q);
  const double denom = factor - 1.0;
  if (!(denom > 1e-300) || !std::isfinite(factor)) {
    return {plain, plain, 0.0, false, true,
            "Richardson factor 2^{1/m} - 1 underflows; using the plain start"};
  }
  const double half = initial_value(spec, 0.5 * h);
  const double extrapolated = (factor * half - plain) / denom;
  if (m < 1.0) {
    if (extrapolated > 0.0) return {extrapolated, extrapolated, 0.0, false, false, {}};
    return {plain, extrapolated, 0.0, false, true,
            "Richardson start is nonpositive and no lower bound exists for m < 1; "
            "using the plain start"};
  }
  const double eps = epsilon_max(h, m, grid.N(), rule);
  const IterationLowerBound floor = iteration_lower_bound(spec.bounds().lower, m, h, eps, 1);
  if (extrapolated >= floor.value && extrapolated > 0.0) {
    return {extrapolated, extrapolated, floor.value, false, false, {}};
  }
  if (floor.vacuous) {
    return {plain, extrapolated, floor.value, false, true,
            "iterate lower bound is vacuous (ε(h) h^{-(m+1)/m} too large); using the plain start"};
  }
  return {floor.value, extrapolated, floor.value, true, false, {}};
}

namespace detail {

inline double advance(double rhs, double m, double y1, std::size_t n) {
  if (!std::isfinite(rhs)) throw solver_error("non-finite right-hand side", n);
  if (rhs > 0.0) return positive_root(rhs, m + 1.0);
  if (rhs == 0.0 && y1 == 0.0) return 0.0;
  throw solver_error("nonpositive right-hand side", n);
}

}  // namespace detail

inline Solution solve(const SolverConfig& cfg) {
  const ProblemSpec& spec = cfg.spec;
  const Grid& grid = cfg.grid;
  const double m = spec.m();
  const std::size_t N = grid.N();
  if (grid.X() > spec.X() * (1.0 + 1e-12)) {
    throw std::invalid_argument("solve: grid extends beyond the problem interval");
  }

  SolutionMeta meta;
  meta.scheme = cfg.rule ? cfg.rule->name() : midpoint_rule(m, cfg.first_panel).name();
  meta.richardson = cfg.richardson;
  if (m < 1.0) meta.warnings.push_back("m < 1: the scheme runs but carries no convergence guarantee");

  double y1 = 0.0;
  if (cfg.start_override) {
    y1 = *cfg.start_override;
    if (!(y1 >= 0.0) || !std::isfinite(y1)) {
      throw std::invalid_argument("solve: start override must be a nonnegative finite value");
    }
    meta.start_rule = "override";
    if (y1 == 0.0) meta.warnings.push_back("zero start: the iteration stays on the trivial solution");
  } else if (cfg.richardson) {
    const WeightRule rule = cfg.rule ? *cfg.rule : midpoint_rule(m, cfg.first_panel);
    const RichardsonStart start = richardson_initial(spec, grid, rule);
    y1 = start.value;
    meta.start_rule = start.fell_back ? "rectangle" : (start.clamped ? "richardson-clamped" : "richardson");
    if (!start.warning.empty()) meta.warnings.push_back(start.warning);
  } else {
    y1 = initial_value(spec, grid.h());
    meta.start_rule = "rectangle";
  }

  std::vector<double> y(N + 1, 0.0);
  y[1] = y1;
  if (cfg.rule) {
    for (std::size_t n = 2; n <= N; ++n) {
      y[n] = detail::advance(generic_rhs(n, y, spec, grid, *cfg.rule), m, y1, n);
    }
  } else {
    for (std::size_t n = 2; n <= N; ++n) {
      y[n] = detail::advance(midpoint_rhs(n, y, spec, grid, cfg.first_panel), m, y1, n);
    }
  }
  return Solution{grid, std::move(y), m, std::move(meta)};
}

/// Solves and maps back to u = y^{m+1}.
inline std::vector<double> solve_original(const SolverConfig& cfg) {
  return to_original_form(solve(cfg));
}

}  // namespace volterra
