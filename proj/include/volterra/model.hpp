#pragma once

/**
 * @file model.hpp
 * @brief Problem definition for y(x)^{m+1} = ∫₀ˣ K(x,t) y(t) dt on [0, X].
 *
 * A Kernel is a pure function of (x, t) together with whatever analytic
 * metadata is known about it: bounds on the triangle 0 <= t <= x <= X, the
 * row integral x -> ∫₀ˣ K(x,t) dt used for the starting value, and the
 * power-law behaviour near the origin. Built-in kernels carry all of it;
 * kernels parsed from user expressions get sampled bounds only.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "volterra/error.hpp"

namespace volterra {

struct KernelBounds {
  double lower;  ///< C
  double upper;  ///< D
};

/// K(x,t) ~ coeff * x^mu * t^nu near the origin.
struct PowerAsymptotics {
  double coeff;
  double mu;
  double nu;
};

class Kernel {
 public:
  using Function = std::function<double(double, double)>;
  using BoundsFunction = std::function<KernelBounds(double)>;
  using RowIntegral = std::function<double(double)>;

  Kernel(std::string name, Function eval, BoundsFunction analytic_bounds = {},
         RowIntegral row_integral = {}, std::optional<PowerAsymptotics> asym = std::nullopt)
      : name_(std::move(name)),
        eval_(std::move(eval)),
        bounds_(std::move(analytic_bounds)),
        row_integral_(std::move(row_integral)),
        asym_(asym) {
    if (!eval_) throw std::invalid_argument("kernel needs an evaluation function");
  }

  /// Unchecked evaluation; the solver's inner loop goes through this.
  double operator()(double x, double t) const { return eval_(x, t); }

  const std::string& name() const noexcept { return name_; }
  bool has_analytic_bounds() const noexcept { return static_cast<bool>(bounds_); }
  KernelBounds analytic_bounds(double X) const { return bounds_(X); }
  bool has_row_integral() const noexcept { return static_cast<bool>(row_integral_); }
  /// ∫₀ˣ K(x,t) dt in closed form.
  double row_integral(double x) const { return row_integral_(x); }
  const std::optional<PowerAsymptotics>& asymptotics() const noexcept { return asym_; }

 private:
  std::string name_;
  Function eval_;
  BoundsFunction bounds_;
  RowIntegral row_integral_;
  std::optional<PowerAsymptotics> asym_;
};

/// K ≡ c.
inline Kernel constant_kernel(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw invalid_kernel("constant kernel must be positive");
  std::ostringstream name;
  name << "constant(" << c << ")";
  return Kernel(
      name.str(), [c](double, double) { return c; },
      [c](double) { return KernelBounds{c, c}; }, [c](double x) { return c * x; },
      PowerAsymptotics{c, 0.0, 0.0});
}

/// K(x,t) = e^{x-t}, bounded by 1 and e^X on the triangle.
inline Kernel exp_convolution_kernel() {
  return Kernel(
      "exp(x-t)", [](double x, double t) { return std::exp(x - t); },
      [](double X) { return KernelBounds{1.0, std::exp(X)}; },
      [](double x) { return std::expm1(x); }, PowerAsymptotics{1.0, 0.0, 0.0});
}

/// K(x,t) = coeff * x^mu * t^nu. Vanishes at the origin unless mu = nu = 0,
/// so it only satisfies the positivity bound in that degenerate case; it is
/// mainly the hypothesis class of the comparison lemma.
inline Kernel power_kernel(double coeff, double mu, double nu) {
  if (!(coeff > 0.0) || mu < 0.0 || nu < 0.0) {
    throw std::invalid_argument("power kernel needs coeff > 0, mu >= 0, nu >= 0");
  }
  std::ostringstream name;
  name << "power(" << coeff << "," << mu << "," << nu << ")";
  return Kernel(
      name.str(),
      [=](double x, double t) { return coeff * std::pow(x, mu) * std::pow(t, nu); },
      [=](double X) {
        const double top = coeff * std::pow(X, mu + nu);
        return (mu + nu == 0.0) ? KernelBounds{coeff, coeff} : KernelBounds{0.0, top};
      },
      [=](double x) { return coeff * std::pow(x, mu) * std::pow(x, nu + 1.0) / (nu + 1.0); },
      PowerAsymptotics{coeff, mu, nu});
}

/// Domain-checked kernel evaluation.
inline double kernel_eval(const Kernel& k, double x, double t) {
  if (!(t >= 0.0) || !(x >= 0.0)) throw std::domain_error("kernel arguments must be nonnegative");
  if (t > x) throw std::domain_error("kernel is only defined for t <= x");
  return k(x, t);
}

inline constexpr int kBoundsLattice = 501;
inline constexpr double kBoundsMargin = 0.01;

/// Bounds (C, D) of K on the triangle 0 <= t <= x <= X. Analytic when the
/// kernel provides them, otherwise sampled over a 501x501 triangular lattice
/// and widened by 1% on each side. Throws invalid_kernel when C <= 0.
inline KernelBounds kernel_bounds(const Kernel& k, double X) {
  if (!(X > 0.0)) throw std::invalid_argument("interval end X must be positive");
  KernelBounds b{};
  if (k.has_analytic_bounds()) {
    b = k.analytic_bounds(X);
  } else {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const int last = kBoundsLattice - 1;
    for (int i = 0; i <= last; ++i) {
      const double x = X * i / last;
      for (int j = 0; j <= i; ++j) {
        const double v = k(x, X * j / last);
        if (!std::isfinite(v)) {
          std::ostringstream os;
          os << "kernel " << k.name() << " is not finite at (" << x << ", " << X * j / last << ")";
          throw invalid_kernel(os.str());
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    b = {lo, hi};
    if (b.lower > 0.0) {
      b.lower *= 1.0 - kBoundsMargin;
      b.upper *= 1.0 + kBoundsMargin;
    }
  }
  if (!(b.lower > 0.0)) {
    std::ostringstream os;
    os << "kernel " << k.name() << " violates 0 < C <= K: lower bound " << b.lower
       << " on [0, " << X << "]";
    throw invalid_kernel(os.str());
  }
  return b;
}

/// One equation instance: exponent m, kernel, interval [0, X].
class ProblemSpec {
 public:
  ProblemSpec(double m, Kernel kernel, double X)
      : m_(m), kernel_(std::move(kernel)), X_(X) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("exponent m must be positive");
    if (!(X > 0.0) || !std::isfinite(X)) throw std::invalid_argument("interval end X must be positive");
    bounds_ = kernel_bounds(kernel_, X_);
  }

  double m() const noexcept { return m_; }
  double X() const noexcept { return X_; }
  const Kernel& kernel() const noexcept { return kernel_; }
  const KernelBounds& bounds() const noexcept { return bounds_; }

  /// Same equation on a different interval; bounds are recomputed.
  ProblemSpec on_interval(double X) const { return ProblemSpec(m_, kernel_, X); }

 private:
  double m_;
  Kernel kernel_;
  double X_;
  KernelBounds bounds_{};
};

/// Uniform mesh x_n = n h, h = X / N, N even.
class Grid {
 public:
  double X() const noexcept { return X_; }
  std::size_t N() const noexcept { return N_; }
  double h() const noexcept { return h_; }

  /// The last node is pinned to X so that an evaluation point chosen as the
  /// interval end is always a node.
  double node(std::size_t n) const noexcept {
    return n == N_ ? X_ : static_cast<double>(n) * h_;
  }

  std::vector<double> nodes() const {
    std::vector<double> out(N_ + 1);
    for (std::size_t n = 0; n <= N_; ++n) out[n] = node(n);
    return out;
  }

 private:
  friend Grid make_grid(double X, long long N);
  Grid(double X, std::size_t N) : X_(X), N_(N), h_(X / static_cast<double>(N)) {}

  double X_;
  std::size_t N_;
  double h_;
};

inline Grid make_grid(double X, long long N) {
  if (!(X > 0.0) || !std::isfinite(X)) throw std::invalid_argument("grid: X must be positive");
  if (N < 2) throw std::invalid_argument("grid: N must be at least 2");
  if (N % 2 != 0) {
    throw std::invalid_argument("grid: N must be even (the midpoint scheme uses panels of width 2h)");
  }
  return Grid(X, static_cast<std::size_t>(N));
}

struct SolutionMeta {
  std::string scheme;
  std::string start_rule;
  bool richardson = false;
  std::vector<std::string> warnings;
};

/// Grid values y_0..y_N of the transformed unknown.
struct Solution {
  Grid grid;
  std::vector<double> values;
  double m;
  SolutionMeta meta;
};

/// u_n = y_n^{m+1}: the unknown of u(x) = ∫₀ˣ K(x,t) u(t)^{1/(m+1)} dt.
inline std::vector<double> to_original_form(std::span<const double> y, double m) {
  std::vector<double> u(y.size());
  std::transform(y.begin(), y.end(), u.begin(), [m](double v) { return std::pow(v, m + 1.0); });
  return u;
}

inline std::vector<double> to_original_form(const Solution& s) {
  return to_original_form(s.values, s.m);
}

}  // namespace volterra
