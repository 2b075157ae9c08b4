#pragma once

// Sign-certified bracketing shared by the signomial engine and the Euler
// pipeline. Functions passed here are strictly monotone on the bracket.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "eulerconf/numeric.hpp"

namespace eulerconf::detail {

inline constexpr int kMaxBisectionSteps = 4000;
inline constexpr double kLadderFactor = 8.0;
inline constexpr double kLadderFloor = 1e-300;
inline constexpr double kLadderCeiling = 1e300;

/// Sums values ordered by decreasing magnitude with compensation.
inline Evaluation sum_by_magnitude(std::span<double> values) {
  std::sort(values.begin(), values.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.evaluation();
}

inline double clamp_tolerance(double tol) {
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  return std::max(tol, 8.0 * kEpsilon);
}

struct Bracket {
  double lo;
  double hi;
  double value;
};

/// Bisects a sign change of f on (lo, hi). sign_lo is the certified sign at
/// lo; the sign at hi is its opposite. Geometric midpoints are used while
/// the bracket spans more than a factor of four.
template <class F>
Bracket bisect(F&& f, double lo, double hi, Sign sign_lo, double tol) {
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    double mid = (lo > 0 && hi > 4 * lo) ? std::sqrt(lo) * std::sqrt(hi)
                                          : lo + 0.5 * (hi - lo);
    if (hi - lo <= tol * hi || mid <= lo || mid >= hi) {
      return {lo, hi, lo + 0.5 * (hi - lo)};
    }
    Sign s = f(mid).certified_sign();
    if (s == Sign::Zero) return {lo, hi, mid};
    if (s == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ToleranceError("bisection did not converge");
}

/// Walks x = start / 8^k towards zero until f has the certified sign `want`.
template <class F>
std::optional<double> ladder_down(F&& f, double start, Sign want, bool include_start) {
  double x = include_start ? start : start / kLadderFactor;
  for (; x >= kLadderFloor; x /= kLadderFactor) {
    Evaluation e = f(x);
    if (!std::isfinite(e.value) || !std::isfinite(e.magnitude)) return std::nullopt;
    if (e.certified_sign() == want) return x;
  }
  return std::nullopt;
}

/// Walks x = start * 8^k towards infinity until f has the certified sign `want`.
template <class F>
std::optional<double> ladder_up(F&& f, double start, Sign want, bool include_start) {
  double x = include_start ? start : start * kLadderFactor;
  for (; x <= kLadderCeiling; x *= kLadderFactor) {
    Evaluation e = f(x);
    if (!std::isfinite(e.value) || !std::isfinite(e.magnitude)) return std::nullopt;
    if (e.certified_sign() == want) return x;
  }
  return std::nullopt;
}

/// A root located on a union of monotone pieces.
struct PieceRoot {
  double lo;
  double hi;
  double value;
  bool at_breakpoint;  // the function vanished (to rounding) at a breakpoint
};

/// Locates the zeros of f on (lo, hi) given the breakpoints that split it
/// into pieces on which f is strictly monotone. Endpoint signs are supplied
/// by the caller (asymptotic signs for 0 and infinity). `finite_point_low`
/// and `finite_point_high` return a finite point of the outermost piece with
/// the given endpoint sign, used to turn an unbounded piece into a bracket.
template <class F, class Low, class High>
std::vector<PieceRoot> roots_on_monotone_pieces(F&& f, double lo, double hi,
                                                Sign sign_lo, Sign sign_hi,
                                                std::span<const double> breakpoints,
                                                double tol, Low&& finite_point_low,
                                                High&& finite_point_high) {
  std::vector<double> points{lo};
  std::vector<Sign> signs{sign_lo};
  std::vector<PieceRoot> roots;
  for (double q : breakpoints) {
    if (!(q > points.back()) || !(q < hi)) continue;
    Sign s = f(q).certified_sign();
    if (s == Sign::Zero) {
      double half = std::max(tol, 8.0 * kEpsilon) * q;
      roots.push_back({q - half, q + half, q, true});
    }
    points.push_back(q);
    signs.push_back(s);
  }
  points.push_back(hi);
  signs.push_back(sign_hi);

  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Sign sa = signs[i];
    Sign sb = signs[i + 1];
    if (sa == Sign::Zero || sb == Sign::Zero || sa == sb) continue;
    double a = points[i];
    double b = points[i + 1];
    if (a == 0.0) a = finite_point_low(std::isinf(b) ? 1.0 : b, std::isinf(b), sa);
    if (std::isinf(b)) b = finite_point_high(a, sb);
    Bracket br = bisect(f, a, b, sa, tol);
    roots.push_back({br.lo, br.hi, br.value, false});
  }
  std::sort(roots.begin(), roots.end(),
            [](const PieceRoot& x, const PieceRoot& y) { return x.value < y.value; });
  return roots;
}

}  // namespace eulerconf::detail
