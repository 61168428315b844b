#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/expr.hpp"

using dunkl::expr::EvalError;
using dunkl::expr::Expression;
using dunkl::expr::ParseError;

namespace {

double eval(const std::string& text, std::vector<double> point) {
  return Expression::parse(text, static_cast<int>(point.size())).evaluate(point);
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(eval("2+3*4", {0.0}) == doctest::Approx(14.0));
  CHECK(eval("2*3+4", {0.0}) == doctest::Approx(10.0));
  CHECK(eval("2^3^2", {0.0}) == doctest::Approx(512.0));     // right-assoc
  CHECK(eval("(2^3)^2", {0.0}) == doctest::Approx(64.0));
  CHECK(eval("-2^2", {0.0}) == doctest::Approx(-4.0));       // power binds tighter
  CHECK(eval("2^-1", {0.0}) == doctest::Approx(0.5));
  CHECK(eval("8/4/2", {0.0}) == doctest::Approx(1.0));       // left-assoc
  CHECK(eval("8-4-2", {0.0}) == doctest::Approx(2.0));
  CHECK(eval("x1^2 + x2^2", {3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(eval("2 * (x1 + 1)", {2.5}) == doctest::Approx(7.0));
}

TEST_CASE("functions") {
  CHECK(eval("abs(x1)", {-2.0}) == doctest::Approx(2.0));
  CHECK(eval("sin(0)", {0.0}) == doctest::Approx(0.0));
  CHECK(eval("cos(0)", {0.0}) == doctest::Approx(1.0));
  CHECK(eval("exp(1)", {0.0}) == doctest::Approx(std::exp(1.0)));
  CHECK(eval("log(exp(2))", {0.0}) == doctest::Approx(2.0));
  CHECK(eval("sqrt(9)", {0.0}) == doctest::Approx(3.0));
  CHECK(eval("min(2, x1)", {5.0}) == doctest::Approx(2.0));
  CHECK(eval("max(2, x1)", {5.0}) == doctest::Approx(5.0));
  CHECK(eval("pow(2, 10)", {0.0}) == doctest::Approx(1024.0));
}

TEST_CASE("syntax errors carry positions") {
  try {
    Expression::parse("2*(x1", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);  // unbalanced parenthesis reported at end of input
  }
  CHECK_THROWS_AS(Expression::parse("", 1), ParseError);
  CHECK_THROWS_AS(Expression::parse("2x1", 1), ParseError);    // no implicit product
  CHECK_THROWS_AS(Expression::parse("2 + ", 1), ParseError);
  CHECK_THROWS_AS(Expression::parse("foo(1)", 1), ParseError);  // unknown identifier
  CHECK_THROWS_AS(Expression::parse("x3", 2), ParseError);      // index > d
  CHECK_THROWS_AS(Expression::parse("min(1)", 1), ParseError);  // arity
  CHECK_THROWS_AS(Expression::parse("sin(1, 2)", 1), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 @ 2", 1), ParseError);
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(eval("1/x1", {0.0}), EvalError);
  CHECK_THROWS_AS(eval("log(x1)", {-1.0}), EvalError);
  CHECK_THROWS_AS(eval("log(0)", {0.0}), EvalError);
  CHECK_THROWS_AS(eval("sqrt(x1)", {-4.0}), EvalError);
  CHECK_THROWS_AS(eval("x1^0.5", {-4.0}), EvalError);
  CHECK_THROWS_AS(eval("0^-1", {0.0}), EvalError);
  CHECK(eval("x1^3", {-2.0}) == doctest::Approx(-8.0));  // integer exponent is fine
  try {
    eval("1 + 1/x1", {0.0});
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.position == 5);  // the offending division
  }
}

TEST_CASE("print/parse idempotence on a battery") {
  const char* exprs[] = {
      "2+3*4",
      "x1^2 + x2^2",
      "-(x1 + 1)*2",
      "-x1^2",
      "(x1 - x2)/(x1 + x2)",
      "min(max(x1, 0), pow(x2, 2))",
      "sin(cos(exp(x1))) - sqrt(abs(x2))",
      "2^-x1^2",
      "8-4-2",
      "8/(4/2)",
      "1e-3*x1 + 2.5E2",
  };
  for (const char* text : exprs) {
    const Expression a = Expression::parse(text, 2);
    const Expression b = Expression::parse(a.to_string(), 2);
    CAPTURE(text);
    CAPTURE(a.to_string());
    CHECK(a.equal_tree(b));
    CHECK(b.to_string() == a.to_string());
  }
}

TEST_CASE("random expression round-trips") {
  dunkl::Uniform rng(20240817);
  // random tree generator over the full grammar
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    if (depth <= 0 || rng.unit() < 0.25) {
      switch (rng.next_bits() % 3) {
        case 0: return "x1";
        case 1: return "x2";
        default: {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.3f", rng.range(0.0, 10.0));
          return buf;
        }
      }
    }
    switch (rng.next_bits() % 9) {
      case 0: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
      case 1: return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
      case 2: return gen(depth - 1) + "*" + gen(depth - 1);
      case 3: return gen(depth - 1) + "/" + gen(depth - 1);
      case 4: return gen(depth - 1) + "^" + gen(depth - 1);
      case 5: return "-" + gen(depth - 1);
      case 6: return "sin(" + gen(depth - 1) + ")";
      case 7: return "abs(" + gen(depth - 1) + ")";
      default: return "min(" + gen(depth - 1) + ", " + gen(depth - 1) + ")";
    }
  };
  for (int i = 0; i < 200; ++i) {
    const std::string text = gen(4);
    const Expression a = Expression::parse(text, 2);
    const Expression b = Expression::parse(a.to_string(), 2);
    CAPTURE(text);
    CAPTURE(a.to_string());
    REQUIRE(a.equal_tree(b));
  }
}

TEST_CASE("fuzzing random byte strings never crashes") {
  dunkl::Uniform rng(99);
  const char alphabet[] = "x12+-*/^()., abcdefgopqrsmin\t\0#";
  int parsed_ok = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng.next_bits() % 24);
    for (int j = 0; j < len; ++j)
      s.push_back(alphabet[rng.next_bits() % (sizeof(alphabet) - 1)]);
    try {
      const Expression e = Expression::parse(s, 2);
      ++parsed_ok;
      try {
        (void)e.evaluate(std::vector<double>{1.0, 2.0});
      } catch (const EvalError&) {
      }
    } catch (const ParseError&) {
    }
  }
  CHECK(parsed_ok > 0);  // some random strings are valid
}

TEST_CASE("deeply nested input is rejected, not a crash") {
  std::string s(10000, '(');
  s += "x1";
  s.append(10000, ')');
  CHECK_THROWS_AS(Expression::parse(s, 1), ParseError);
}
