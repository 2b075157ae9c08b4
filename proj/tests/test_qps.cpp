#include "doctest.h"

#include <cmath>
#include <random>

#include "eulerconf/qps.hpp"

using namespace eulerconf;

namespace {

StraightSystem euler_system(const MassTriple& m, double b) {
  return reduce_to_straight(euler_trinomial(), 0, euler_second_equation(m, b));
}

}  // namespace

TEST_CASE("bivariate normalization and evaluation") {
  BivariateSignomial f = normalize({{1, 1, 0}, {2, 0, 1}, {-1, 1, 0}, {3, 0, 1}});
  REQUIRE(f.size() == 1);
  CHECK(f.terms()[0] == BivariateTerm{5, 0, 1});
  BivariateSignomial g = normalize({{2, 0.5, 1}, {-1, 0, 0}});
  CHECK(evaluate(g, 4, 3) == doctest::Approx(2 * 2 * 3 - 1));
  CHECK_THROWS_AS(evaluate(g, 0, 1), DomainError);
  CHECK_THROWS_AS(evaluate(g, 1, -1), DomainError);
  CHECK_THROWS_AS(normalize({{1, NAN, 0}}), PreconditionError);
}

TEST_CASE("the Euler trinomial reduces to -s + t = 1") {
  StraightSystem sys = euler_system({1, 2, 3}, -1.5);
  CHECK(sys.constraint.a1 == -1.0);
  CHECK(sys.constraint.a2 == 1.0);
  CHECK(sys.second == euler_second_equation({1, 2, 3}, -1.5));
}

TEST_CASE("restriction of the Euler system is g") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> m(-10, 10), b(-5, 5), logs(-2, 2);
  for (int i = 0; i < 200; ++i) {
    MassTriple masses{m(rng), m(rng), m(rng)};
    double bb = b(rng);
    StraightSystem sys = euler_system(masses, bb);
    LineRestriction line = restrict_to_line(sys.second, sys.constraint);
    CHECK(line.lo() == 0.0);
    CHECK(std::isinf(line.hi()));
    double s = std::pow(10.0, logs(rng));
    Evaluation e = line.evaluate(s);
    CHECK(std::abs(e.value - eval_g(masses, bb, s)) <= 1e-12 * e.magnitude);
    // and it matches direct evaluation at the matched point
    CHECK(e.value == evaluate(sys.second, s, 1 + s));
  }
}

TEST_CASE("simple restrictions") {
  LineRestriction xy = restrict_to_line(normalize({{1, 1, 1}}), {1, 1});
  CHECK(xy.lo() == 0.0);
  CHECK(xy.hi() == 1.0);
  CHECK(xy(0.25) == doctest::Approx(0.25 * 0.75));

  LineRestriction below = restrict_to_line(normalize({{1, 0, 1}}), {2, -1});
  CHECK(below.lo() == 0.5);
  CHECK(std::isinf(below.hi()));
  CHECK(below(1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(restrict_to_line(normalize({{1, 1, 1}}), {1, 0}), DomainError);
  CHECK_THROWS_AS(restrict_to_line(normalize({{1, 1, 1}}), {-1, -1}), DomainError);
}

TEST_CASE("counting on a line") {
  // y - 1 on y = 1
  LineCount zero = count_on_line(normalize({{1, 0, 1}, {-1, 0, 0}}), {0, 1});
  CHECK(zero.count.is_identically_zero());
  // x + y - 3 on x + y = 1 is -2
  LineCount none = count_on_line(normalize({{1, 1, 0}, {1, 0, 1}, {-3, 0, 0}}), {1, 1});
  CHECK(none.count == RootCount::finite(0));
  // x - y on x + y = 1 vanishes at x = 1/2
  LineCount half = count_on_line(normalize({{1, 1, 0}, {-1, 0, 1}}), {1, 1});
  REQUIRE(half.count == RootCount::finite(1));
  CHECK(half.roots[0].value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Euler system examples") {
  StraightSystem equal = euler_system({1, 1, 1}, -2);
  LineCount one = count_on_line(equal.second, equal.constraint);
  REQUIRE(one.count == RootCount::finite(1));
  CHECK(one.roots[0].value == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(one.certification == Certification::LowerBound);

  StraightSystem three = euler_system({1, -1.2, 1}, -2);
  LineCount capped = count_on_line(three.second, three.constraint, kDefaultTolerance, 3);
  CHECK(capped.count == RootCount::finite(3));
  CHECK(capped.certification == Certification::ExactAtCap);
}

TEST_CASE("the reduced system agrees with count_cell") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> m(-10, 10), b(-5, 5);
  for (int i = 0; i < 40; ++i) {
    MassTriple masses{m(rng), m(rng), m(rng)};
    double bb = b(rng);
    StraightSystem sys = euler_system(masses, bb);
    CHECK(count_on_line(sys.second, sys.constraint).count.as_integer() ==
          count_cell(masses, bb, Cell::Two).count.value());
  }
}

TEST_CASE("a non-affine trinomial is straightened by a change of variables") {
  // x^2 + 1 - y^3 = 0 with u = x^2, v = y^3 becomes -u + v = 1, and the
  // second equation x^2 y^3 - 4 x becomes u v - 4 u^(1/2).
  BivariateSignomial tri = normalize({{1, 2, 0}, {1, 0, 0}, {-1, 0, 3}});
  BivariateSignomial second = normalize({{1, 2, 3}, {-4, 1, 0}});
  StraightSystem sys = reduce_to_straight(tri, 0, second);
  CHECK(sys.constraint.a1 == doctest::Approx(-1));
  CHECK(sys.constraint.a2 == doctest::Approx(1));
  for (double u : {0.1, 0.7, 3.0, 20.0}) {
    double v = 1 + u;
    double x = std::sqrt(u), y = std::cbrt(v);
    CHECK(evaluate(sys.second, u, v) == doctest::Approx(evaluate(second, x, y)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(reduce_to_straight(normalize({{1, 1, 0}, {1, 0, 0}}), 0, second),
                  PreconditionError);
  CHECK_THROWS_AS(reduce_to_straight(normalize({{1, 1, 1}, {1, 0, 0}, {1, 2, 2}}), 1, second),
                  PreconditionError);
  CHECK_THROWS_AS(reduce_to_straight(tri, 3, second), PreconditionError);
}

TEST_CASE("bound formulas") {
  CHECK(straight_bound(6) == 62);
  CHECK(straight_bound(3) == 6);
  CHECK(straight_bound(1) == 0);
  CHECK_THROWS_AS(straight_bound(0), DomainError);
  CHECK_THROWS_AS(straight_bound(64), DomainError);

  CHECK(khovanskii_bound(1, 2, 4) == 32768);
  CHECK(khovanskii_bound(1, 1, 6) == 729ull * 32768ull);
  CHECK(khovanskii_bound(1, 1, 0) == 1);
  CHECK_THROWS_AS(khovanskii_bound(0, 1, 1), DomainError);
  CHECK_THROWS_AS(khovanskii_bound(1, 1, -1), DomainError);
  CHECK_THROWS_AS(khovanskii_bound(1, 1, 40), DomainError);

  for (int n = 1; n < 20; ++n) CHECK(straight_bound(n + 1) > straight_bound(n));
  for (int d = 1; d < 5; ++d) {
    for (int k = 0; k < 5; ++k) {
      CHECK(khovanskii_bound(d + 1, 2, k) > khovanskii_bound(d, 2, k));
      CHECK(khovanskii_bound(d, 2, k + 1) > khovanskii_bound(d, 2, k));
    }
  }
}
