#pragma once

// Two-variable quasi-polynomial systems whose first equation is a trinomial.
// Dividing by one term and taking the other two as new variables turns the
// trinomial into a line a1 x + a2 y = 1, leaving a one-variable problem for
// the second equation along that line.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eulerconf/euler.hpp"
#include "eulerconf/signomial.hpp"

namespace eulerconf {

struct BivariateTerm {
  double coefficient;
  double x_exponent;
  double y_exponent;

  friend bool operator==(const BivariateTerm&, const BivariateTerm&) = default;
};

/// Terms sorted by (x_exponent, y_exponent), no duplicate exponent pairs, no
/// zero coefficients.
class BivariateSignomial {
 public:
  BivariateSignomial() = default;

  std::span<const BivariateTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  friend bool operator==(const BivariateSignomial&, const BivariateSignomial&) = default;

 private:
  friend BivariateSignomial normalize(std::span<const BivariateTerm> raw);
  std::vector<BivariateTerm> terms_;
};

BivariateSignomial normalize(std::span<const BivariateTerm> raw);
BivariateSignomial normalize(std::initializer_list<BivariateTerm> raw);

/// Value at x, y > 0 (DomainError otherwise), with the term-magnitude sum.
Evaluation evaluate_with_magnitude(const BivariateSignomial& f, double x, double y);
double evaluate(const BivariateSignomial& f, double x, double y);

/// a1 x + a2 y = 1 with a2 != 0.
struct AffineConstraint {
  double a1 = 0.0;
  double a2 = 1.0;
};

/// x -> f(x, (1 - a1 x) / a2) on the open interval (lo, hi) where x > 0 and
/// y > 0.
class LineRestriction {
 public:
  LineRestriction(BivariateSignomial f, AffineConstraint c, double lo, double hi)
      : f_(std::move(f)), c_(c), lo_(lo), hi_(hi) {}

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double y_at(double x) const { return (1.0 - c_.a1 * x) / c_.a2; }

  Evaluation evaluate(double x) const { return evaluate_with_magnitude(f_, x, y_at(x)); }
  double operator()(double x) const { return evaluate(x).value; }

 private:
  BivariateSignomial f_;
  AffineConstraint c_;
  double lo_;
  double hi_;
};

/// DomainError when the constraint has a2 = 0 or the admissible interval is
/// empty.
LineRestriction restrict_to_line(const BivariateSignomial& f, const AffineConstraint& c);

struct StraightSystem {
  AffineConstraint constraint;
  BivariateSignomial second;
};

/// Divides the trinomial by the term at right_index and, unless the two
/// remaining monomials are already x and y, changes variables to them.
/// PreconditionError when the first equation is not a trinomial or its
/// monomials are dependent.
StraightSystem reduce_to_straight(const BivariateSignomial& trinomial, std::size_t right_index,
                                  const BivariateSignomial& second);

/// s + 1 - t in (s, t) = (x, y). Terms are stored as 1, -t, s, so the
/// constant right member is index 0.
BivariateSignomial euler_trinomial();

/// g written as a function of s and t = 1 + s.
BivariateSignomial euler_second_equation(const MassTriple& m, double b);

enum class Certification {
  LowerBound,  // sign changes seen by the scan; zeros may be missed
  ExactAtCap,  // the count reached the caller's upper bound
};

struct LineCount {
  RootCount count = RootCount::finite(0);
  std::vector<RootRecord> roots;  // degenerate is not assessed here
  Certification certification = Certification::LowerBound;
};

inline constexpr int kLineProbes = 10000;

/// Zeros of the restriction found from sign changes of a scan, each refined
/// by bisection. The scan is log-spaced over 1e-12..1e12 relative to the
/// interval and refined around local minima of |f|. Reports the identically
/// zero sentinel when no probe has a certified sign.
LineCount count_on_line(const BivariateSignomial& f, const AffineConstraint& c,
                        double tol = kDefaultTolerance, std::optional<int> cap = std::nullopt);

/// 2^n - 2 for n >= 1 (DomainError otherwise, or when it overflows).
std::uint64_t straight_bound(int n);

/// d1 d2 (d1 + d2 + 1)^k 2^(k(k-1)/2) for d1, d2 >= 1, k >= 0; DomainError
/// outside those ranges or on overflow.
std::uint64_t khovanskii_bound(int d1, int d2, int k);

}  // namespace eulerconf
