#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "volterra/expression.hpp"

using Catch::Approx;
using namespace volterra;

TEST_CASE("parse_kernel_expression builds evaluatable kernels", "[cli][expression]") {
  SECTION("exp(x-t) is the convolution kernel") {
    const Kernel k = parse_kernel_expression("exp(x-t)");
    CHECK(k(1.0, 0.0) == Approx(std::numbers::e).epsilon(1e-15));
    for (double x : {0.0, 0.3, 1.0}) {
      for (double t : {0.0, 0.5 * x, x}) CHECK(k(x, t) == std::exp(x - t));
    }
  }
  SECTION("a literal becomes a constant kernel with exact bounds") {
    const Kernel k = parse_kernel_expression("1");
    const KernelBounds b = kernel_bounds(k, 1.0);
    CHECK(b.lower == 1.0);
    CHECK(b.upper == 1.0);
    REQUIRE(k.has_row_integral());
    CHECK(k.row_integral(0.25) == 0.25);
  }
  SECTION("nonpositive kernels are rejected") {
    CHECK_THROWS_AS(parse_kernel_expression("x - t - 1", 1.0), invalid_kernel);
    CHECK_THROWS_AS(parse_kernel_expression("-2"), invalid_kernel);
    CHECK_THROWS_AS(parse_kernel_expression("0"), invalid_kernel);
  }
  SECTION("sampled bounds for a non-constant expression") {
    const Kernel k = parse_kernel_expression("2 + x", 1.0);
    const KernelBounds b = kernel_bounds(k, 1.0);
    CHECK(b.lower == Approx(1.98));
    CHECK(b.upper == Approx(3.03));
  }
}

TEST_CASE("expression grammar", "[cli][expression]") {
  auto ev = [](const char* s, double x = 0.0, double t = 0.0) { return Expression::parse(s)(x, t); };
  CHECK(ev("1+2*3^2") == 19.0);
  CHECK(ev("2^3^2") == 512.0);
  CHECK(ev("-x^2", 3.0) == -9.0);
  CHECK(ev("(1+2)*3") == 9.0);
  CHECK(ev("8/4/2") == 1.0);
  CHECK(ev("1 - 2 - 3") == -4.0);
  CHECK(ev("pow(x, 2) + sqrt(t) + log(exp(1))", 3.0, 4.0) == Approx(12.0));
  CHECK(ev("1.5e-3*x", 2.0) == Approx(3e-3));
  CHECK(ev(".5 + +t", 0.0, 1.0) == 1.5);
  CHECK(Expression::parse("3*2").is_constant());
  CHECK_FALSE(Expression::parse("3*t").is_constant());
}

TEST_CASE("expression errors carry a position", "[cli][expression]") {
  auto position_of = [](const char* s) {
    try {
      (void)Expression::parse(s);
    } catch (const expression_error& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(position_of("x $ t") == 2);
  CHECK(position_of("y + 1") == 0);
  CHECK(position_of("exp(x") == 5);
  CHECK(position_of("sin(x)") == 0);
  CHECK(position_of("1 +") == 3);
  CHECK(position_of("pow(x)") == 5);
  CHECK(position_of("(x))") == 3);
  CHECK(position_of("") == 0);
}
