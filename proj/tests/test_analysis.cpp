#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "volterra/analysis.hpp"
#include "volterra/oracles.hpp"

using Catch::Approx;
using namespace volterra;

TEST_CASE("exact solutions", "[analysis]") {
  CHECK(exact_example1(2.0, 1e-3) == Approx(2.581988897471611257e-2).epsilon(1e-15));
  CHECK(exact_example2(1.0, 1e-3) == Approx(5.001250208359377604e-4).epsilon(1e-14));
  CHECK(exact_example1(1.0, 0.3) == Approx(0.15));
  CHECK(exact_example2(3.0, 0.0) == 0.0);
  CHECK_THROWS_AS(exact_example1(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(example_solution(3, 2.0), std::invalid_argument);
}

TEST_CASE("exact solutions satisfy their equations", "[analysis][property]") {
  // y^{m+1}(x) = ∫₀ˣ K(x,t) y(t) dt, checked by quadrature.
  for (double m : {1.0, 2.0, 10.0}) {
    for (int ex : {1, 2}) {
      const auto y = example_solution(ex, m);
      const Kernel k = example_kernel(ex);
      for (double x : {1e-3, 0.5, 1.0}) {
        auto f = [&](double s) {
          const double s7 = std::pow(s, 7);
          const double t = x * s7 * s;
          return k(x, t) * y(t) * 8.0 * x * s7;
        };
        const double rhs = integrate_adaptive(f, 0.0, 1.0, {1e-15, 1e-13});
        INFO("m=" << m << " ex=" << ex << " x=" << x);
        CHECK(std::pow(y(x), m + 1.0) == Approx(rhs).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("small-x asymptotics of Example 2", "[analysis]") {
  for (double m : {1.0, 2.0, 10.0}) {
    const double x = 1e-6;
    const double r = exact_example2(m, x) / (std::pow(m / (m + 1.0), 1.0 / m) * std::pow(x, 1.0 / m));
    CHECK(std::abs(r - 1.0) <= 1e-3);
    const AsymptoticForm a = asymptotic_form(1.0, 0.0, m);
    CHECK(a(x) == Approx(exact_example1(m, x)).epsilon(1e-14));
  }
}

TEST_CASE("node_index and error_at", "[analysis]") {
  const Grid g = make_grid(1.0, 8);
  CHECK(node_index(g, 0.5) == 4u);
  CHECK(node_index(g, 1.0) == 8u);
  CHECK_FALSE(node_index(g, 0.3).has_value());
  CHECK_FALSE(node_index(g, 2.0).has_value());
  const Solution s{g, std::vector<double>(9, 0.25), 1.0, {}};
  CHECK(error_at(s, [](double x) { return x; }, 0.5) == 0.25);
  CHECK_THROWS(error_at(s, [](double x) { return x; }, 0.3));
}

TEST_CASE("estimate_order", "[analysis]") {
  SECTION("recovers a clean power law") {
    std::vector<ErrorSample> s;
    for (int j = 1; j <= 10; ++j) {
      const double h = std::ldexp(1.0, -j);
      s.push_back({h, 3.0 * std::pow(h, 1.5)});
    }
    const OrderFit f = estimate_order(s, 1.0);
    CHECK(f.slope == Approx(1.5).epsilon(1e-12));
    CHECK(f.r2 == Approx(1.0));
    CHECK(f.used == 10);
  }
  SECTION("rounding-level errors are reported as exact") {
    std::vector<ErrorSample> s{{0.1, 0.0}, {0.05, 1e-20}, {0.025, 0.0}};
    const OrderFit f = estimate_order(s, 1.0);
    CHECK(f.exact);
    CHECK(f.excluded == 3);
  }
  SECTION("floor scales with the step count") {
    const double e = 1e-13;  // above 100 eps, below 100 eps * 4096
    CHECK_FALSE(estimate_order(std::vector<ErrorSample>{{0.1, e, 1}, {0.05, e / 2, 1}}).exact);
    CHECK(estimate_order(std::vector<ErrorSample>{{0.1, e, 4096}, {0.05, e / 2, 4096}}).exact);
  }
  SECTION("too few usable samples") {
    CHECK_THROWS_AS(estimate_order(std::vector<ErrorSample>{{0.1, 1.0}, {0.05, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_order(std::vector<ErrorSample>{{0.1, 1.0}, {0.1, 0.5}}), std::invalid_argument);
  }
}

TEST_CASE("theoretical_order", "[analysis]") {
  const double ms[] = {1.5, 2.0, 10.0, 100.0, 1000.0};
  for (double m : ms) {
    const double t = theoretical_order(m, 2.0, 1.0, 1.0, 1.0 / m, 1.0 + 1.0 / m);
    CHECK(std::abs(t - (1.0 - 1.0 / m)) <= 1e-12);
    CHECK(order_guaranteed(t));
  }
  CHECK_FALSE(order_guaranteed(theoretical_order(1.0, 2.0, 1.0, 1.0, 1.0, 2.0)));
  CHECK_THROWS_AS(theoretical_order(2.0, 0.0, 1.0, 1.0, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("convergence_sweep and its CSV", "[analysis]") {
  const ProblemSpec spec(2.0, constant_kernel(1.0), 1.0);
  const std::vector<int> depths{1, 2, 3, 4, 5, 6};
  const ConvergenceReport r = convergence_sweep(spec, 0.001, depths, example_solution(1, 2.0));
  REQUIRE(r.samples.size() == 6);
  CHECK_FALSE(r.failure);
  CHECK(r.fit.slope > 0.9);
  CHECK(r.theoretical_order == Approx(0.5));
  std::ostringstream os;
  write_csv(os, r);
  const std::string csv = os.str();
  CHECK(csv.rfind("h,N,error,log10_h,log10_error\n", 0) == 0);
  CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("# fitted_order="));
  CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("# theoretical_order=5.0000000000000000e-01"));

  const ConvergenceReport exact =
      convergence_sweep(ProblemSpec(1.0, constant_kernel(1.0), 1.0), 0.001, depths, example_solution(1, 1.0),
                        {FirstPanel::power_law, true});
  CHECK(exact.fit.exact);
  std::ostringstream os2;
  write_csv(os2, exact);
  CHECK_THAT(os2.str(), Catch::Matchers::ContainsSubstring("# fitted_order=exact"));
  CHECK_THAT(os2.str(), Catch::Matchers::ContainsSubstring("# theoretical_bound=no guarantee"));
}
