#pragma once

// Thin wrapper over Boost's adaptive Gauss-Kronrod quadrature that turns a
// missed tolerance into an exception instead of a silently returned estimate.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "volterra/error.hpp"

namespace volterra {

struct QuadratureTolerance {
  double absolute = 1e-13;
  double relative = 0.0;
  unsigned max_depth = 40;
};

/// Integrates f over [a, b]. Succeeds when the Gauss-Kronrod error estimate
/// is below max(absolute, relative * |I|); otherwise throws integration_error.
template <class F>
double integrate_adaptive(F&& f, double a, double b, QuadratureTolerance tol = {}) {
  if (a == b) return 0.0;
  using rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Boost floors its per-panel error at 2 eps times the panel sum taken on
  // [-1, 1], not on [a, b]; on short intervals that floor never meets a
  // tolerance scaled by the panel length. Integrate over [0, 1] instead.
  const double len = b - a;
  auto g = [&](double s) { return f(a + len * s); };
  double error = 0.0;
  double l1 = 0.0;
  // Boost bisects every panel whose error exceeds tol * L1, so the relative
  // tolerance handed to it is derived from a coarse pass; an unattainable
  // value would make the recursion explore the full tree.
  const double coarse = len * rule::integrate(g, 0.0, 1.0, 0, 0.0, &error, &l1);
  const double scale = std::abs(len) * std::max(l1, std::abs(coarse / len));
  double inner_tol = tol.relative;
  if (scale > 0.0) inner_tol = std::max(inner_tol, 0.25 * tol.absolute / scale);
  inner_tol = std::max(inner_tol, 16.0 * std::numeric_limits<double>::epsilon());
  const double value = len * rule::integrate(g, 0.0, 1.0, tol.max_depth, inner_tol, &error, &l1);
  error *= std::abs(len);
  l1 *= std::abs(len);
  const double target =
      std::max({tol.absolute, tol.relative * std::abs(value), inner_tol * l1});
  if (!std::isfinite(value) || !(error <= target)) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimate " << error
       << " > tolerance " << target;
    throw integration_error(os.str());
  }
  return value;
}

}  // namespace volterra
