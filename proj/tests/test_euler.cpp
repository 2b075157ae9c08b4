#include "doctest.h"

#include <cmath>
#include <random>

#include "eulerconf/euler.hpp"
#include "eulerconf/verification.hpp"

using namespace eulerconf;

namespace {

MassTriple random_masses(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10, 10);
  double a = u(rng), b = u(rng), c = u(rng);
  return {a, b, c};
}

double random_exponent(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5, 5);
  double b = u(rng);
  while (std::abs(b) < 1e-3 || std::abs(b - 1) < 1e-3 || std::abs(b - 2) < 1e-3 ||
         std::abs(b - 3) < 1e-3) {
    b = u(rng);
  }
  return b;
}

}  // namespace

TEST_CASE("the three forms of g agree") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> logs(-3, 3);
  for (int i = 0; i < 500; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    double s = std::pow(10.0, logs(rng));
    Evaluation g = eval_g_with_magnitude(m, b, s);
    CHECK(std::abs(g.value - eval_g_abc(m, b, s)) <= 1e-10 * g.magnitude);
    CHECK(std::abs(g.value - eval_g_expanded(m, b, s)) <= 1e-10 * g.magnitude);
  }
}

TEST_CASE("g' matches a central difference") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> logs(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    double s = std::pow(10.0, logs(rng));
    double h = 1e-4 * s;
    double fd = (eval_g(m, b, s + h) - eval_g(m, b, s - h)) / (2 * h);
    Evaluation d = eval_g_prime_with_magnitude(m, b, s);
    CHECK(std::abs(fd - d.value) <= 1e-6 * d.magnitude);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(abc_terms(-2, 0.0), DomainError);
  CHECK_THROWS_AS(eval_g({1, 1, 1}, -2, -1.0), DomainError);
  CHECK_THROWS_AS(eval_h({1, 1, 1}, -2, 1.0), DomainError);
  CHECK_THROWS_AS(eval_h({1, 1, 1}, 1, 0.5), DomainError);
  CHECK_THROWS_AS(h_signomial({1, 1, 1}, 0), DomainError);
  CHECK_THROWS_AS(h_signomial({1, 1, 1}, 1), DomainError);
}

TEST_CASE("h vanishes at y = 1 and H = b(b-1)h") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    Signomial H = h_signomial(m, b);
    Evaluation at_one = evaluate_with_magnitude(H, 1.0);
    CHECK(std::abs(at_one.value) <= 1e-12 * at_one.magnitude);
    for (double y : {0.1, 0.5, 0.9}) {
      Evaluation e = evaluate_with_magnitude(H, y);
      CHECK(std::abs(e.value - b * (b - 1) * eval_h(m, b, y)) <= 1e-12 * e.magnitude);
    }
  }
}

TEST_CASE("g(1) = 0 for equal exterior masses") {
  for (double b : {-3.0, -0.5, 0.5, 2.5, 4.0}) {
    for (double m2 : {-2.0, 0.3, 7.0}) {
      Evaluation g = eval_g_with_magnitude({1, m2, 1}, b, 1.0);
      CHECK(std::abs(g.value) <= 1e-14 * g.magnitude);
    }
  }
}

TEST_CASE("degenerate families") {
  CHECK(degenerate_family({0, 0, 0}, -2) == DegenerateFamily::AllMassesZero);
  CHECK(degenerate_family({2, -2, 2}, 0) == DegenerateFamily::ZeroExponent);
  CHECK(degenerate_family({3, -1, 5}, 1) == DegenerateFamily::UnitExponent);
  CHECK(degenerate_family({4, 0, 4}, 2) == DegenerateFamily::SquareExponent);
  CHECK(degenerate_family({-1, -1, -1}, 3) == DegenerateFamily::CubeExponent);
  CHECK_FALSE(degenerate_family({2, -2, 2.001}, 0));
  CHECK_FALSE(degenerate_family({4, 0.001, 4}, 2));
  CHECK_FALSE(degenerate_family({1, 1, 1}, 3.001));
  CHECK(roman_label(DegenerateFamily::SquareExponent) == "iv");

  for (auto [m, b] : {std::pair{MassTriple{0, 0, 0}, -2.0}, {{1, -1, 1}, 0.0}, {{1, 1, 1}, 1.0},
                      {{1, 0, 1}, 2.0}, {{1, 1, 1}, 3.0}}) {
    CellResult r = count_cell(m, b, Cell::Two);
    CHECK(r.count.is_infinite());
    CHECK(r.family.has_value());
    CHECK(endpoint_sign_g(m, b, Endpoint::ZeroPlus) == Sign::Zero);
    // g really vanishes identically there
    for (double s : {0.3, 1.7, 12.0}) {
      Evaluation g = eval_g_with_magnitude(m, b, s);
      CHECK(std::abs(g.value) <= 1e-13 * std::max(g.magnitude, 1.0));
    }
  }
}

TEST_CASE("endpoint signs: tables agree with the series and with evaluation") {
  std::mt19937_64 rng(4);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    for (Endpoint end : {Endpoint::ZeroPlus, Endpoint::Infinity}) {
      Sign table = endpoint_sign_g(m, b, end);
      CHECK(table == endpoint_sign_g_series(m, b, end));
      Evaluation e = eval_g_with_magnitude(m, b, end == Endpoint::ZeroPlus ? 1e-9 : 1e9);
      if (std::abs(e.value) > 1e-6 * e.magnitude) {
        ++compared;
        CHECK(sign_of(e.value) == table);
      }
    }
  }
  CHECK(compared > 1500);
}

TEST_CASE("endpoint signs when the colliding pair has zero total mass") {
  // b < 0, m2 + m3 = 0: the next term is m3 s^(b+1)
  CHECK(endpoint_sign_g({1, -2, 2}, -1.5, Endpoint::ZeroPlus) == Sign::Positive);
  CHECK(endpoint_sign_g({1, 2, -2}, -1.5, Endpoint::ZeroPlus) == Sign::Negative);
  // 0 < b < 1, m2 + m3 = 0: ((b-1) m1) s
  CHECK(endpoint_sign_g({1, 2, -2}, 0.5, Endpoint::ZeroPlus) == Sign::Negative);
  // b < 1 at infinity, m1 + m2 = 0 and b < 0: -m1
  CHECK(endpoint_sign_g({3, -3, 1}, -2, Endpoint::Infinity) == Sign::Negative);
  // b = 0 and b = 2 use the series
  CHECK(endpoint_sign_g({1, 1, 1}, 0, Endpoint::ZeroPlus) == Sign::Positive);
  CHECK(endpoint_sign_g({1, 1, 1}, 2, Endpoint::Infinity) == Sign::Positive);
  for (auto [m, b] : {std::pair{MassTriple{1, -2, 2}, -1.5}, {{1, 2, -2}, 0.5}, {{1, 1, 1}, 0.0}}) {
    CHECK(sign_of(eval_g(m, b, 1e-7)) == endpoint_sign_g(m, b, Endpoint::ZeroPlus));
  }
  CHECK(sign_of(eval_g({3, -3, 1}, -2, 1e7)) == Sign::Negative);
  CHECK(sign_of(eval_g({1, 1, 1}, 2, 1e7)) == Sign::Positive);
}

TEST_CASE("g' endpoint signs match evaluation") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    // Competing powers differ by b, b - 1 or b - 2; keep them well apart.
    if (std::abs(b) < 0.1 || std::abs(b - 1) < 0.1 || std::abs(b - 2) < 0.1) continue;
    for (Endpoint end : {Endpoint::ZeroPlus, Endpoint::Infinity}) {
      Evaluation e = eval_g_prime_with_magnitude(m, b, end == Endpoint::ZeroPlus ? 1e-30 : 1e30);
      if (std::abs(e.value) > 1e-6 * e.magnitude) {
        INFO("m=(" << m.m1 << "," << m.m2 << "," << m.m3 << ") b=" << b << " value " << e.value
                   << " magnitude " << e.magnitude);
        CHECK(sign_of(e.value) == endpoint_sign_g_prime(m, b, end));
      }
    }
  }
}

TEST_CASE("cell views") {
  MassTriple m{1, 2, 3};
  CHECK(cell_mass_view(m, Cell::Two) == MassTriple{1, 2, 3});
  CHECK(cell_mass_view(m, Cell::Three) == MassTriple{1, 3, 2});
  CHECK(cell_mass_view(m, Cell::One) == MassTriple{2, 1, 3});
}

TEST_CASE("positive masses at b = -2: one configuration per cell") {
  CellCount c = count_all({1, 1, 1}, -2);
  CHECK(c.e1 == Count::finite(1));
  CHECK(c.e2 == Count::finite(1));
  CHECK(c.e3 == Count::finite(1));
  CHECK(c.total == Count::finite(3));
  REQUIRE(c.solutions.size() == 3);
  for (const ConfigurationSolution& sol : c.solutions) CHECK(sol.s == doctest::Approx(1.0));
  CHECK(c.solutions[1].positions == std::array<double, 3>{0, 1, 2});
}

TEST_CASE("worked examples") {
  CHECK(count_cell({1, -1.2, 1}, -2, Cell::Two).count == Count::finite(3));
  CHECK(count_all({0, -1, 1}, -2).total == Count::finite(0));
  CHECK(count_all({0, -1, 1}, -1).total == Count::finite(0));
  CellCount c = count_all({1, -0.9, 1}, 0.5);
  CHECK(c.e1 == Count::finite(1));
  CHECK(c.e2 == Count::finite(3));
  CHECK(c.e3 == Count::finite(1));

  // b = 0: g = m2 + m3 - (m1 + m2) s
  CellResult affine = count_cell({1, 1, 1}, 0, Cell::Two);
  REQUIRE(affine.count == Count::finite(1));
  CHECK(affine.solutions[0].s == doctest::Approx(1.0));
  CHECK(count_cell({1, -1, 2}, 0, Cell::Two).count == Count::finite(0));
}

TEST_CASE("zero total mass: the centre of mass stays at the origin") {
  MassTriple m{1, 2, -3};
  CellCount c = count_all(m, -2);
  REQUIRE(c.total == Count::finite(1));
  CHECK(std::abs(zero_sum_residual(m, c.solutions[0])) < 1e-9);
  CHECK_THROWS_AS(zero_sum_residual({1, 1, 1}, c.solutions[0]), PreconditionError);
}

TEST_CASE("counts agree with a dense scan of the determinant on the whole line") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 40; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    CellCount c = count_all(m, b);
    auto oracle = verification::line_oracle_counts(m, b, 100000);
    INFO("m=(" << m.m1 << "," << m.m2 << "," << m.m3 << ") b=" << b);
    CHECK(c.e1.value() == oracle.e1);
    CHECK(c.e2.value() == oracle.e2);
    CHECK(c.e3.value() == oracle.e3);
  }
}

TEST_CASE("solutions are zeros of g and sit in their cell") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    MassTriple m = random_masses(rng);
    double b = random_exponent(rng);
    CellCount c = count_all(m, b);
    for (const ConfigurationSolution& sol : c.solutions) {
      MassTriple v = cell_mass_view(m, sol.cell);
      Evaluation d = eval_g_prime_with_magnitude(v, b, sol.s);
      Evaluation g = eval_g_with_magnitude(v, b, sol.s);
      // |g| within the bracket width times the slope, plus rounding
      CHECK(std::abs(g.value) <= 1e-11 * sol.s * std::abs(d.value) + 1e-12 * g.magnitude);
      const auto& x = sol.positions;
      int middle = static_cast<int>(sol.cell) - 1;
      double lo = std::min({x[0], x[1], x[2]}), hi = std::max({x[0], x[1], x[2]});
      CHECK(x[middle] > lo);
      CHECK(x[middle] < hi);
    }
  }
}

TEST_CASE("Count arithmetic") {
  CHECK(Count::finite(2) + Count::finite(3) == Count::finite(5));
  CHECK((Count::finite(2) + Count::infinite()).is_infinite());
  CHECK(Count::infinite().to_string() == "inf");
  CHECK_THROWS_AS(Count::infinite().value(), PreconditionError);
}
