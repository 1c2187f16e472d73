#pragma once

/**
 * @file quad.hpp
 * @brief Quadrature weights, right-hand sides of the explicit scheme and the
 *        local consistency errors that control its convergence.
 *
 * The scheme discretises ∫₀^{x_n} K(x_n,t) y(t) dt by h Σ_{i=1}^{n-1} w_{n,i}
 * K(x_n,x_i) y_i. The midpoint rule covers [0, x_n] with panels of width 2h
 * centred on nodes of opposite parity to n:
 *
 *   n even:  panels [0,2h], [2h,4h], ...           weight 2 at odd i
 *   n odd:   first panel [0,h], then [h,3h], ...   weight 2 at even i
 *
 * The odd chain needs a one-sided rule for [0, h], which only sees y_1.
 * FirstPanel::trapezoid gives it weight 1/2 (exact for linear y). With
 * y ~ t^{1/m} near the origin the trapezoid badly underestimates that panel
 * for large m; FirstPanel::power_law uses the weight m/(m+1), which is exact
 * for t^{1/m} and coincides with 1/2 at m = 1.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "volterra/error.hpp"
#include "volterra/integrate.hpp"
#include "volterra/model.hpp"
#include "volterra/numeric.hpp"

namespace volterra {

enum class FirstPanel { power_law, trapezoid };

inline double first_panel_weight(FirstPanel fp, double m) {
  return fp == FirstPanel::power_law ? m / (m + 1.0) : 0.5;
}

inline const char* to_string(FirstPanel fp) {
  return fp == FirstPanel::power_law ? "power-law" : "trapezoid";
}

/// Sign of the local consistency errors δ_n for concave, increasing solutions.
enum class DeltaSign { nonpositive, nonnegative, unknown };

struct WeightTerm {
  std::size_t index;  ///< i in 1..n-1
  double weight;      ///< w_{n,i}
};

/// A quadrature rule for the explicit scheme, described by the nonzero
/// weights it places on y_1..y_{n-1} for each target node n >= 2.
class WeightRule {
 public:
  using Generator = std::function<void(std::size_t n, std::vector<WeightTerm>& out)>;

  WeightRule(std::string name, Generator gen, double W, DeltaSign sign)
      : name_(std::move(name)), gen_(std::move(gen)), W_(W), sign_(sign) {}

  const std::string& name() const noexcept { return name_; }
  double W() const noexcept { return W_; }
  DeltaSign delta_sign() const noexcept { return sign_; }

  std::vector<WeightTerm> terms(std::size_t n) const {
    std::vector<WeightTerm> out;
    terms(n, out);
    return out;
  }

  void terms(std::size_t n, std::vector<WeightTerm>& out) const {
    out.clear();
    gen_(n, out);
  }

 private:
  std::string name_;
  Generator gen_;
  double W_;
  DeltaSign sign_;
};

inline WeightRule midpoint_rule(double m, FirstPanel fp = FirstPanel::power_law) {
  const double c0 = first_panel_weight(fp, m);
  auto gen = [c0](std::size_t n, std::vector<WeightTerm>& out) {
    std::size_t j = 1;
    if (n % 2 == 1) {
      out.push_back({1, c0});
      j = 2;
    }
    for (; j < n; j += 2) out.push_back({j, 2.0});
  };
  // The trapezoid first panel under-integrates concave solutions, so the
  // sign of δ_n is only known for the power-law variant.
  const DeltaSign sign = fp == FirstPanel::power_law ? DeltaSign::nonpositive : DeltaSign::unknown;
  return WeightRule(std::string("midpoint/") + to_string(fp), gen, 2.0, sign);
}

/// Left rectangle rule: w_{n,i} = 1 for i = 1..n-1.
inline WeightRule rectangle_rule() {
  return WeightRule(
      "rectangle",
      [](std::size_t n, std::vector<WeightTerm>& out) {
        for (std::size_t i = 1; i < n; ++i) out.push_back({i, 1.0});
      },
      1.0, DeltaSign::unknown);
}

/// w_{n,i} = 1 for i < n-1 and 1/2 at i = n-1.
inline WeightRule explicit_trapezoid_rule() {
  return WeightRule(
      "explicit-trapezoid",
      [](std::size_t n, std::vector<WeightTerm>& out) {
        for (std::size_t i = 1; i + 1 < n; ++i) out.push_back({i, 1.0});
        if (n >= 2) out.push_back({n - 1, 0.5});
      },
      1.0, DeltaSign::unknown);
}

/// y_n^{m+1} for the midpoint scheme, evaluated straight from the panel
/// structure: (c0 h) K_{n,1} y_1 [odd n] + 2h Σ K_{n,j} y_j over midpoints j.
inline double midpoint_rhs(std::size_t n, std::span<const double> history, const ProblemSpec& spec,
                           const Grid& grid, FirstPanel fp = FirstPanel::power_law) {
  if (n < 2) throw std::invalid_argument("midpoint_rhs: the scheme starts at n = 2");
  if (history.size() < n) throw std::invalid_argument("midpoint_rhs: history must hold y_0..y_{n-1}");
  const Kernel& K = spec.kernel();
  const double xn = grid.node(n);
  CompensatedSum sum;
  std::size_t j = 1;
  if (n % 2 == 1) {
    sum.add(first_panel_weight(fp, spec.m()) * K(xn, grid.node(1)) * history[1]);
    j = 2;
  }
  for (; j < n; j += 2) sum.add(2.0 * K(xn, grid.node(j)) * history[j]);
  return grid.h() * sum.value();
}

/// h Σ w_{n,i} K_{n,i} y_i for an arbitrary rule.
inline double generic_rhs(std::size_t n, std::span<const double> history, const ProblemSpec& spec,
                          const Grid& grid, const WeightRule& rule) {
  if (n < 2) throw std::invalid_argument("generic_rhs: the scheme starts at n = 2");
  if (history.size() < n) throw std::invalid_argument("generic_rhs: history must hold y_0..y_{n-1}");
  const Kernel& K = spec.kernel();
  const double xn = grid.node(n);
  CompensatedSum sum;
  for (const WeightTerm& term : rule.terms(n)) {
    if (!(term.weight > 0.0)) {
      throw std::invalid_argument("weight rule " + rule.name() + " produced a nonpositive weight");
    }
    if (term.index == 0 || term.index >= n) {
      throw std::invalid_argument("weight rule " + rule.name() + " references a node outside 1..n-1");
    }
    sum.add(term.weight * K(xn, grid.node(term.index)) * history[term.index]);
  }
  return grid.h() * sum.value();
}

/// ε(h): the largest consistency error of `rule` applied to t^{1/m} over the
/// nodes n = 2..N, measured against the exact antiderivative
/// (m/(m+1)) t^{(m+1)/m}.
inline double epsilon_max(double h, double m, std::size_t N, const WeightRule& rule) {
  if (!(m > 0.0)) throw std::invalid_argument("epsilon_max: m must be positive");
  if (!(h > 0.0)) throw std::invalid_argument("epsilon_max: h must be positive");
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("epsilon_max: N must be even and >= 2");
  std::vector<double> f(N + 1);
  for (std::size_t i = 0; i <= N; ++i) f[i] = std::pow(static_cast<double>(i) * h, 1.0 / m);
  const double c = m / (m + 1.0);
  const double p = (m + 1.0) / m;
  double worst = 0.0;
  std::vector<WeightTerm> terms;
  for (std::size_t n = 2; n <= N; ++n) {
    rule.terms(n, terms);
    CompensatedSum q;
    for (const WeightTerm& t : terms) q.add(t.weight * f[t.index]);
    const double exact = c * std::pow(static_cast<double>(n) * h, p);
    worst = std::max(worst, std::abs(exact - h * q.value()));
  }
  return worst;
}

inline double epsilon_max(double h, double m, std::size_t N) {
  return epsilon_max(h, m, N, midpoint_rule(m));
}

/// Per-node consistency errors δ_n(h). Entries 0 and 1 are zero: the scheme
/// does not discretise anything there.
struct ConsistencyReport {
  std::vector<double> per_node;
  double delta_max = 0.0;
  std::size_t argmax = 0;
};

/// δ_n(h) = ∫₀^{x_n} K(x_n,t) y(t) dt - h Σ w_{n,i} K_{n,i} y(x_i) for a known
/// solution y. Reference integrals use adaptive Gauss-Kronrod to 1e-13
/// absolute, split at x_1 so the root singularity sits on a panel end.
inline ConsistencyReport delta_report(const std::function<double(double)>& exact,
                                      const ProblemSpec& spec, const Grid& grid,
                                      const WeightRule& rule) {
  const Kernel& K = spec.kernel();
  const std::size_t N = grid.N();
  std::vector<double> y(N + 1);
  for (std::size_t i = 0; i <= N; ++i) y[i] = exact(grid.node(i));

  ConsistencyReport report;
  report.per_node.assign(N + 1, 0.0);
  std::vector<WeightTerm> terms;
  for (std::size_t n = 2; n <= N; ++n) {
    const double xn = grid.node(n);
    auto integrand = [&](double t) { return K(xn, t) * exact(t); };
    const double x1 = grid.node(1);
    // t = x1 s^8 on the first panel: removes the t^{1/m} endpoint singularity.
    auto graded = [&](double s) {
      const double s7 = std::pow(s, 7);
      return integrand(x1 * s7 * s) * 8.0 * x1 * s7;
    };
    const double reference =
        integrate_adaptive(graded, 0.0, 1.0) + integrate_adaptive(integrand, x1, xn);
    rule.terms(n, terms);
    CompensatedSum q;
    for (const WeightTerm& t : terms) q.add(t.weight * K(xn, grid.node(t.index)) * y[t.index]);
    const double d = reference - grid.h() * q.value();
    report.per_node[n] = d;
    if (std::abs(d) > report.delta_max) {
      report.delta_max = std::abs(d);
      report.argmax = n;
    }
  }
  return report;
}

/// (h/2) V₀ʰ(t^{1/m}) = (h/2) h^{1/m}: the midpoint error on [0, h] for a
/// monotone integrand of bounded variation.
inline double bv_local_error_bound(double h, double m) {
  if (!(m >= 1.0)) throw std::invalid_argument("bv_local_error_bound: requires m >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("bv_local_error_bound: h must be positive");
  return 0.5 * h * std::pow(h, 1.0 / m);
}

}  // namespace volterra
