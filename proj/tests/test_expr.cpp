#include "kmns/expr.hpp"

#include <cmath>

#include "doctest.h"
#include "kmns/errors.hpp"
#include "kmns/geometry.hpp"

namespace {

using kmns::Jet;
using kmns::JetPoint;
using kmns::Point;

JetPoint seeded(const Point& p) { return kmns::seed_point(p, 3); }

double eval_value(const std::string& text, const Point& p,
                  const kmns::VariableMap& vars) {
  return kmns::parse_expression(text, vars).eval(seeded(p)).value();
}

}  // namespace

TEST_SUITE("expr") {
  TEST_CASE("values of representative polynomials") {
    const auto vars = kmns::cartesian_variables();
    const Point p = {0.5, 2.0, -3.0, 1.5};
    CHECK(eval_value("x1^2 + x2^2", p, vars) == doctest::Approx(13.0));
    CHECK(eval_value("2*x + 3*y - z", p, vars) == doctest::Approx(-6.5));
    CHECK(eval_value("x*y*z", p, vars) == doctest::Approx(-9.0));
    CHECK(eval_value("t^3 - 2*t", p, vars) == doctest::Approx(-0.875));
    CHECK(eval_value("0.25", p, vars) == 0.25);
    CHECK(eval_value("1.5e-2*z", p, vars) == doctest::Approx(0.0225));
    CHECK(eval_value("(x + y)*(x - y)", p, vars) == doctest::Approx(-5.0));
    CHECK(eval_value("x^0", p, vars) == 1.0);
    CHECK(eval_value("  2 * ( x + 1 ) ", p, vars) == doctest::Approx(6.0));
  }

  TEST_CASE("unary sign and precedence pins") {
    const auto vars = kmns::cartesian_variables();
    const Point p = {0.0, 2.0, 0.0, 0.0};
    // unary minus binds looser than '^'
    CHECK(eval_value("-x^2", p, vars) == doctest::Approx(-4.0));
    CHECK(eval_value("(-x)^2", p, vars) == doctest::Approx(4.0));
    CHECK(eval_value("--x", p, vars) == doctest::Approx(2.0));
    CHECK(eval_value("-- x + +x", p, vars) == doctest::Approx(4.0));
    CHECK(eval_value("2 - -x", p, vars) == doctest::Approx(4.0));
    // '*' binds tighter than '+'
    CHECK(eval_value("1 + 2*x", p, vars) == doctest::Approx(5.0));
    // '^' binds tighter than '*'
    CHECK(eval_value("3*x^2", p, vars) == doctest::Approx(12.0));
  }

  TEST_CASE("spherical aliases map to the right slots") {
    const auto vars = kmns::spherical_variables();
    const Point p = {1.0, 4.0, 0.5, 2.5};
    CHECK(eval_value("t", p, vars) == 1.0);
    CHECK(eval_value("r", p, vars) == 4.0);
    CHECK(eval_value("theta", p, vars) == 0.5);
    CHECK(eval_value("phi", p, vars) == 2.5);
    CHECK(eval_value("x0 - t", p, vars) == 0.0);
    CHECK(eval_value("x1 - r", p, vars) == 0.0);
    CHECK(eval_value("r^2*phi", p, vars) == doctest::Approx(40.0));
  }

  TEST_CASE("jet propagation: exact derivatives of a parsed polynomial") {
    const auto vars = kmns::cartesian_variables();
    const auto e = kmns::parse_expression("x1^3 - 2*x1*x2^2", vars);
    const double a = 1.7, b = -0.6;
    const Jet j = e.eval(seeded({0.0, a, b, 0.0}));
    CHECK(j.value() == doctest::Approx(a * a * a - 2.0 * a * b * b));
    CHECK(j.d1(1) == doctest::Approx(3.0 * a * a - 2.0 * b * b));
    CHECK(j.d1(2) == doctest::Approx(-4.0 * a * b));
    CHECK(j.d2(1, 1) == doctest::Approx(6.0 * a));
    CHECK(j.d2(1, 2) == doctest::Approx(-4.0 * b));
    CHECK(j.d3(1, 1, 1) == doctest::Approx(6.0));
    CHECK(j.d3(1, 2, 2) == doctest::Approx(-4.0));
    CHECK(j.d3(2, 2, 2) == 0.0);
  }

  TEST_CASE("rejections: everything off the whitelist fails loudly") {
    const auto vars = kmns::cartesian_variables();
    CHECK_THROWS_AS((void)kmns::parse_expression("q + 1", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("2x", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x(y)", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x/y", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("sin(x)", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x^-1", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x^2.5", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x^y", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x^99", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x^2^3", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("   ", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("()", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("(x", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x)", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x y", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x +", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("* x", vars),
                    kmns::config_error);
    CHECK_THROWS_AS((void)kmns::parse_expression("x # y", vars),
                    kmns::config_error);
    // spherical names are not visible through the rectangular table
    CHECK_THROWS_AS((void)kmns::parse_expression("r", vars),
                    kmns::config_error);
  }

  TEST_CASE("diagnostics carry the position and the input") {
    const auto vars = kmns::cartesian_variables();
    try {
      (void)kmns::parse_expression("x + qq", vars);
      FAIL("expected a parse failure");
    } catch (const kmns::config_error& err) {
      const std::string what = err.what();
      CHECK(what.find("position 4") != std::string::npos);
      CHECK(what.find("x + qq") != std::string::npos);
      CHECK(what.find("qq") != std::string::npos);
    }
  }
}
