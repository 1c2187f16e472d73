#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "volterra/analysis.hpp"
#include "volterra/oracles.hpp"
#include "volterra/solver.hpp"
#include "volterra/verify.hpp"

using Catch::Approx;
using namespace volterra;

TEST_CASE("zeta on (0, 1)", "[oracles][zeta]") {
  CHECK(std::abs(zeta_open_interval(0.5) + 1.46035450880959) <= 1e-12);
  CHECK(std::abs(zeta_euler_maclaurin(0.5) + 1.46035450880959) <= 1e-10);
  for (double s = 0.02; s < 1.0; s += 0.07) {
    INFO("s=" << s);
    CHECK(zeta_open_interval(s) == Approx(zeta_euler_maclaurin(s)).epsilon(1e-10));
    CHECK(zeta_open_interval(s) < 0.0);
  }
  CHECK_THROWS_AS(zeta_open_interval(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta_open_interval(0.0), std::domain_error);
}

TEST_CASE("-1 < A zeta(1-A) < 0 on random A", "[oracles][zeta][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 20; ++i) {
    const double A = u(rng);
    const double v = A * zeta_open_interval(1.0 - A);
    INFO("A=" << A);
    CHECK(v < 0.0);
    CHECK(v > -1.0);
  }
}

TEST_CASE("recurrence bound dominates the extremal sequence", "[oracles][recurrence]") {
  for (double A : {0.25, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    const RecurrenceBound b = recurrence_bound(A, 1.0, 1.0);
    const std::vector<double> e = simulate_recurrence(A, 1.0, 1.0, 100000);
    REQUIRE(e.size() == 100000);
    double worst = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      worst = std::max(worst, e[k] * std::pow(static_cast<double>(k + 1), b.exponent));
    }
    INFO("A=" << A);
    CHECK(worst <= b.M * (1.0 + 1e-12));
  }
  CHECK(recurrence_bound(0.5, 1.0, 1.0)(4.0) == Approx(recurrence_bound(0.5, 1.0, 1.0).M / 2.0));
  CHECK_THROWS_AS(recurrence_bound(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_recurrence(0.5, 1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("gronwall_bound", "[oracles][gronwall]") {
  for (double m : {0.5, 1.0, 2.0, 10.0, 100.0}) {
    for (double x : {1e-6, 1e-3, 0.5, 1.0, 3.0}) {
      const double g = gronwall_bound(1.0, 0.0, 0.0, m, x);
      const double y = exact_example1(m, x);
      CHECK(std::abs(g - y) <= 1e-14 * y);
    }
  }
  // Example 2 solution lies between the bounds with C = 1 and C = e^{x}.
  for (double m : {1.0, 2.0, 10.0}) {
    const double x = 0.5;
    CHECK(exact_example2(m, x) >= gronwall_bound(1.0, 0.0, 0.0, m, x));
    CHECK(exact_example2(m, x) <= gronwall_bound(std::exp(x), 0.0, 0.0, m, x));
  }
}

TEST_CASE("iteration lower bound holds for the solver", "[oracles][iteration]") {
  for (double m : {1.0, 2.0, 10.0}) {
    for (double h : {1e-2, 1e-3}) {
      const auto N = static_cast<long long>(std::llround(1.0 / h));
      const Grid g = make_grid(1.0, N);
      const double eps = epsilon_max(g.h(), m, g.N());
      const Solution sol = solve(SolverConfig{ProblemSpec(m, constant_kernel(1.0), 1.0), g});
      const IterationLowerBound first = iteration_lower_bound(1.0, m, g.h(), eps, 1);
      CHECK_FALSE(first.vacuous);
      CHECK((1.0 - first.prefactor) * m / (m + 1.0) <= 0.6);
      for (std::size_t n = 1; n <= g.N(); ++n) {
        REQUIRE(sol.values[n] >= iteration_lower_bound(1.0, m, g.h(), eps, n).value);
      }
    }
  }
  CHECK(iteration_lower_bound(1.0, 2.0, 0.01, 1.0, 1).vacuous);
  CHECK_THROWS_AS(iteration_lower_bound(1.0, 0.5, 0.01, 0.0, 1), std::invalid_argument);
}

TEST_CASE("bracketing", "[oracles][bracketing]") {
  for (double m : {1.0, 2.0, 10.0}) {
    for (long long N : {2LL, 16LL, 256LL, 4096LL}) {
      const Solution sol = solve(SolverConfig{ProblemSpec(m, constant_kernel(1.0), 1.0), make_grid(1.0, N)});
      const auto exact = example_solution(1, m);
      const BracketDirection dir =
          bracket_direction(midpoint_rule(m).delta_sign(), sol.values[1], exact(sol.grid.h()));
      REQUIRE(dir == BracketDirection::numerical_above);
      const BracketReport r = check_bracketing(sol, exact, dir);
      INFO("m=" << m << " N=" << N);
      CHECK(r.passed(1e-13));
    }
  }
  SECTION("unknown sign is skipped with a notice") {
    const Solution sol = solve(SolverConfig{ProblemSpec(2.0, constant_kernel(1.0), 1.0), make_grid(1.0, 8)});
    const BracketReport r = check_bracketing(sol, example_solution(1, 2.0), BracketDirection::unknown);
    CHECK(r.skipped);
    CHECK_FALSE(r.notice.empty());
  }
  CHECK(bracket_direction(DeltaSign::nonnegative, 0.1, 0.2) == BracketDirection::numerical_below);
  CHECK(bracket_direction(DeltaSign::nonpositive, 0.1, 0.2) == BracketDirection::unknown);
}

TEST_CASE("verify suites", "[oracles][verify]") {
  for (const std::string& name : verify_suite_names()) {
    const std::vector<CheckResult> r = run_verify_suite(name, 8);
    REQUIRE_FALSE(r.empty());
    for (const CheckResult& c : r) {
      INFO(c.suite << ": " << c.check << " observed " << c.observed << " threshold " << c.threshold);
      CHECK(c.passed);
    }
  }
  CHECK_THROWS_AS(run_verify_suite("nope"), std::invalid_argument);
}
