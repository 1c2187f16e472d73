#pragma once

// Checkable forms of the comparison and Gronwall-type inequalities behind the
// convergence proof: closed-form comparison bounds, the discrete recurrence
// bound with its zeta constant, the lower bound on iterates and the
// bracketing check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra/model.hpp"
#include "volterra/numeric.hpp"
#include "volterra/quad.hpp"

namespace volterra {

/// ζ(s) for 0 < s < 1 through the Dirichlet eta function,
/// ζ(s) = η(s) / (1 - 2^{1-s}), with η summed by the Cohen-Villegas-Zagier
/// acceleration of alternating series (error ~ 5.8^{-terms}).
inline double zeta_open_interval(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("zeta_open_interval: s must lie in (0, 1)");
  constexpr int terms = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), terms);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  double sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    sum += c * std::pow(static_cast<double>(k + 1), -s);
    b *= static_cast<double>(k + terms) * static_cast<double>(k - terms) /
         ((static_cast<double>(k) + 0.5) * static_cast<double>(k + 1));
  }
  const double eta = sum / d;
  return eta / -std::expm1((1.0 - s) * std::numbers::ln2);
}

/// Second, independent route to ζ(s) on (0, 1): a direct partial sum up to
/// `cut` followed by the Euler-Maclaurin tail with eight Bernoulli terms.
inline double zeta_euler_maclaurin(double s, int cut = 20) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("zeta_euler_maclaurin: s must lie in (0, 1)");
  static constexpr std::array<double, 8> bernoulli{1.0 / 6,     -1.0 / 30, 1.0 / 42,
                                                   -1.0 / 30,   5.0 / 66,  -691.0 / 2730,
                                                   7.0 / 6,     -3617.0 / 510};
  const double n = cut;
  double sum = 0.0;
  for (int k = cut - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  double rising = s;           // s (s+1) ... (s+2j-2)
  double factorial = 2.0;      // (2j)!
  double power = std::pow(n, -s - 1.0);
  for (std::size_t j = 1; j <= bernoulli.size(); ++j) {
    sum += bernoulli[j - 1] / factorial * rising * power;
    const double a = static_cast<double>(2 * j);
    rising *= (s + a - 1.0) * (s + a);
    factorial *= (a + 1.0) * (a + 2.0);
    power /= n * n;
  }
  return sum;
}

/// e_n <= (1/n)(A Σ_{i<n} e_i + B)  implies  e_n <= M / n^{1-A}.
struct RecurrenceBound {
  double A;
  double B;
  double e1;
  double M;
  double exponent;  ///< 1 - A

  double operator()(double n) const { return M / std::pow(n, exponent); }
};

inline RecurrenceBound recurrence_bound(double A, double B, double e1) {
  if (!(A > 0.0)) throw std::invalid_argument("recurrence_bound: A must be positive");
  if (B < 0.0 || e1 < 0.0) throw std::invalid_argument("recurrence_bound: B, e1 must be nonnegative");
  const double base = std::max(e1, B);
  double M = base;
  if (A < 1.0) M = base / (-A * zeta_open_interval(1.0 - A));
  return {A, B, e1, M, 1.0 - A};
}

/// The sequence attaining the recurrence with equality. Any admissible
/// sequence with the same e_1 is dominated by it term by term. Element k
/// holds e_{k+1}.
inline std::vector<double> simulate_recurrence(double A, double B, double e1, std::size_t n_max) {
  if (n_max < 2) throw std::invalid_argument("simulate_recurrence: n_max must be >= 2");
  std::vector<double> e;
  e.reserve(n_max);
  e.push_back(e1);
  CompensatedSum partial;
  partial.add(e1);
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double en = (A * partial.value() + B) / static_cast<double>(n);
    if (!std::isfinite(en)) {
      throw std::overflow_error("simulate_recurrence: overflow at n = " + std::to_string(n));
    }
    e.push_back(en);
    partial.add(en);
  }
  return e;
}

/// (C m/(m+1) / (1 + ν + μ/(m+1)))^{1/m} x^{(1+ν+μ)/m}: the solution of the
/// comparison equation y^{m+1} = C x^μ ∫₀ˣ t^ν y dt.
inline double gronwall_bound(double C, double mu, double nu, double m, double x) {
  if (!(C > 0.0) || !(m > 0.0)) throw std::invalid_argument("gronwall_bound: C, m must be positive");
  if (mu < 0.0 || nu < 0.0 || x < 0.0) {
    throw std::invalid_argument("gronwall_bound: mu, nu, x must be nonnegative");
  }
  const double coeff = C * (m / (m + 1.0)) / (1.0 + nu + mu / (m + 1.0));
  return std::pow(coeff, 1.0 / m) * std::pow(x, (1.0 + nu + mu) / m);
}

struct IterationLowerBound {
  double value;
  double prefactor;  ///< E(h) = 1 - (m+1)/m ε(h) h^{-(m+1)/m}
  bool vacuous;      ///< prefactor <= 0
};

/// (1 - (m+1)/m ε h^{-(m+1)/m}) (C m/(m+1) n h)^{1/m}.
inline IterationLowerBound iteration_lower_bound(double C, double m, double h, double eps,
                                                 std::size_t n) {
  if (!(m >= 1.0)) throw std::invalid_argument("iteration_lower_bound: requires m >= 1");
  if (!(C > 0.0) || !(h > 0.0) || eps < 0.0) {
    throw std::invalid_argument("iteration_lower_bound: C, h must be positive and eps nonnegative");
  }
  const double prefactor = 1.0 - (m + 1.0) / m * eps * std::pow(h, -(m + 1.0) / m);
  const double base = std::pow(C * m / (m + 1.0) * static_cast<double>(n) * h, 1.0 / m);
  return {prefactor * base, prefactor, prefactor <= 0.0};
}

/// Which side of the exact solution the iterates are expected on.
enum class BracketDirection {
  numerical_above,  ///< δ_n <= 0 and y_1 >= y(h):  y_n >= y(x_n)
  numerical_below,  ///< δ_n >= 0 and y_1 <= y(h):  y_n <= y(x_n)
  unknown,
};

/// Combines the rule's δ sign with the starting comparison.
inline BracketDirection bracket_direction(DeltaSign sign, double y1, double exact_at_h) {
  if (sign == DeltaSign::nonpositive && y1 >= exact_at_h) return BracketDirection::numerical_above;
  if (sign == DeltaSign::nonnegative && y1 <= exact_at_h) return BracketDirection::numerical_below;
  return BracketDirection::unknown;
}

struct BracketReport {
  bool skipped = false;
  std::string notice;
  /// Largest signed violation: positive means the iterate sits on the wrong
  /// side of the exact solution by that much.
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;

  bool passed(double tol) const { return skipped || worst_violation <= tol; }
};

inline BracketReport check_bracketing(const Solution& sol, const std::function<double(double)>& exact,
                                      BracketDirection direction) {
  BracketReport report;
  if (direction == BracketDirection::unknown) {
    report.skipped = true;
    report.notice = "sign of the consistency error is unknown; bracketing not checked";
    return report;
  }
  const double sign = direction == BracketDirection::numerical_above ? 1.0 : -1.0;
  for (std::size_t n = 1; n < sol.values.size(); ++n) {
    const double violation = sign * (exact(sol.grid.node(n)) - sol.values[n]);
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.worst_index = n;
    }
  }
  return report;
}

}  // namespace volterra
