#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace eulerconf {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

/// Default relative bisection width for isolated roots.
inline constexpr double kDefaultTolerance = 1e-12;

/// A root x* is degenerate when the derivative-chain function at x* is
/// below this fraction of its own term-magnitude sum.
inline constexpr double kDegeneracyThreshold = 1e-8;

/// Evaluations whose magnitude is below this multiple of eps times the
/// term-magnitude sum carry no certified sign.
inline constexpr double kNoiseFactor = 64.0 * kEpsilon;

/// Argument outside the domain of a function (x <= 0, b = 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller-side precondition that the library cannot repair.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root isolation could not certify a sign at working precision.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(double v) {
  if (v > 0) return Sign::Positive;
  if (v < 0) return Sign::Negative;
  return Sign::Zero;
}

inline Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

inline char sign_char(Sign s) {
  switch (s) {
    case Sign::Positive: return '+';
    case Sign::Negative: return '-';
    case Sign::Zero: break;
  }
  return '0';
}

enum class Endpoint { ZeroPlus, Infinity };

/// A function value together with the sum of the magnitudes of the terms
/// that produced it; the latter scales the rounding noise.
struct Evaluation {
  double value = 0.0;
  double magnitude = 0.0;

  double noise() const { return kNoiseFactor * magnitude; }

  /// Sign of the value, or Zero when it is indistinguishable from rounding.
  Sign certified_sign() const {
    if (!std::isfinite(value) || !std::isfinite(magnitude)) {
      throw ToleranceError("non-finite evaluation");
    }
    return std::abs(value) <= noise() ? Sign::Zero : sign_of(value);
  }
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      correction_ += (sum_ - t) + v;
    } else {
      correction_ += (v - t) + sum_;
    }
    sum_ = t;
    magnitude_ += std::abs(v);
  }
  double value() const { return sum_ + correction_; }
  double magnitude() const { return magnitude_; }
  Evaluation evaluation() const { return {value(), magnitude_}; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
  double magnitude_ = 0.0;
};

}  // namespace eulerconf
