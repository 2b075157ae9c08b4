#pragma once

// Generalized polynomials with real exponents on the positive half-line,
//
//     p(x) = a_1 x^e_1 + ... + a_n x^e_n,   e_1 < ... < e_n,
//
// with certified counting and isolation of their positive zeros. Counting
// follows the Laguerre derivative chain: the pivot exponent at the first
// sign change is shifted to zero and the result differentiated, which drops
// one term and one sign variation. The zeros of the next link split (0, inf)
// into pieces on which x^-pivot p(x) is strictly monotone.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "eulerconf/numeric.hpp"

namespace eulerconf {

struct Term {
  double coefficient;
  double exponent;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Normalized signomial: exponents strictly increasing, no zero coefficient.
/// The empty signomial is the zero function.
class Signomial {
 public:
  Signomial() = default;

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  friend bool operator==(const Signomial&, const Signomial&) = default;

 private:
  friend Signomial normalize(std::span<const Term> raw);
  std::vector<Term> terms_;
};

/// Merges terms with exactly equal exponents, drops zero sums, sorts.
Signomial normalize(std::span<const Term> raw);
Signomial normalize(std::initializer_list<Term> raw);

/// Value at x > 0. Throws DomainError otherwise.
double evaluate(const Signomial& p, double x);

/// Compensated evaluation (terms summed by decreasing magnitude), with the
/// term-magnitude sum attached.
Evaluation evaluate_with_magnitude(const Signomial& p, double x);

Signomial derivative(const Signomial& p);

/// (x^-pivot p(x))'. The pivot must be one of p's exponents
/// (PreconditionError otherwise); the result has one term fewer.
Signomial shift_and_differentiate(const Signomial& p, double pivot_exponent);

int sign_variations(const Signomial& p);

/// Sign of the dominant term as x -> 0+ (lowest exponent) or x -> inf
/// (highest exponent); Zero only for the empty signomial.
Sign limit_sign(const Signomial& p, Endpoint endpoint);

/// Exponent of the first coefficient whose sign differs from the first one.
/// PreconditionError when there is no sign variation.
double laguerre_pivot(const Signomial& p);

/// p, then shift_and_differentiate at the Laguerre pivot, repeated until a
/// link without sign variations is reached.
std::vector<Signomial> derivative_chain(const Signomial& p);

/// Number of distinct zeros in an open interval; the sentinel stands for a
/// function vanishing identically (counted as -1 in the Z convention).
class RootCount {
 public:
  static RootCount finite(int n) { return RootCount(n); }
  static RootCount identically_zero() { return RootCount(-1); }

  bool is_identically_zero() const { return value_ < 0; }
  /// Throws PreconditionError for the identically-zero sentinel.
  int value() const {
    if (value_ < 0) throw PreconditionError("root count is identically zero");
    return value_;
  }
  /// -1 for the identically-zero sentinel.
  int as_integer() const { return value_; }

  friend bool operator==(const RootCount&, const RootCount&) = default;

 private:
  explicit RootCount(int v) : value_(v) {}
  int value_;
};

struct RootRecord {
  double lo;
  double hi;
  double value;
  bool degenerate;
};

struct Isolation {
  RootCount count = RootCount::finite(0);
  std::vector<RootRecord> roots;
};

/// Certified count and isolation of the zeros of p in (lo, hi), where
/// 0 <= lo < hi and hi may be kInfinity. Throws DomainError for a bad
/// interval and ToleranceError when a sign cannot be certified.
Isolation count_and_isolate(const Signomial& p, double lo = 0.0, double hi = kInfinity,
                            double tol = kDefaultTolerance);

/// A point where the dominant term at the endpoint outweighs twice the sum
/// of all other terms, so the sign there equals limit_sign. Empty when that
/// point, or the dominant term's value there, is outside the range of doubles.
std::optional<double> dominance_point(const Signomial& p, Endpoint endpoint);

}  // namespace eulerconf
