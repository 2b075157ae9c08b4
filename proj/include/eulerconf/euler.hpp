#pragma once

// Collinear central configurations of three particles with masses
// (m1, m2, m3) and interaction exponent b, i.e. the zeros of
//
//   g(s) = m1 A(s) + m2 B(s) + m3 C(s)
//        = (m2+m3) s^b + (m1+m3)(1+s)^b + m3 (s^(b+1) - (1+s)^(b+1)) - m1 (1+s) - m2 s
//
// for the normalized configuration x = (0, 1, 1+s). The cell whose middle
// particle is i is reduced to s > 0 by permuting the masses.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulerconf/numeric.hpp"
#include "eulerconf/signomial.hpp"

namespace eulerconf {

struct MassTriple {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  friend bool operator==(const MassTriple&, const MassTriple&) = default;
};

/// Named after the particle in the middle of the ordering.
enum class Cell : int { One = 1, Two = 2, Three = 3 };

inline constexpr std::array<Cell, 3> kAllCells{Cell::One, Cell::Two, Cell::Three};

/// Parameter sets on which g vanishes identically on s > 0.
enum class DegenerateFamily {
  AllMassesZero,        // (i)   m1 = m2 = m3 = 0
  ZeroExponent,         // (ii)  b = 0, m1 = -m2 = m3
  UnitExponent,         // (iii) b = 1
  SquareExponent,       // (iv)  b = 2, m2 = 0, m1 = m3
  CubeExponent,         // (v)   b = 3, m1 = m2 = m3
};

/// "i" ... "v".
std::string_view roman_label(DegenerateFamily family);

/// A count that may be infinite (a degenerate family).
class Count {
 public:
  static Count finite(int n) { return Count(n); }
  static Count infinite() { return Count(-1); }

  bool is_infinite() const { return value_ < 0; }
  /// Throws PreconditionError when infinite.
  int value() const {
    if (value_ < 0) throw PreconditionError("count is infinite");
    return value_;
  }
  /// Decimal value, or "inf".
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

  friend Count operator+(Count a, Count b) {
    return a.is_infinite() || b.is_infinite() ? infinite() : finite(a.value_ + b.value_);
  }
  friend bool operator==(const Count&, const Count&) = default;

 private:
  explicit Count(int v) : value_(v) {}
  int value_;
};

struct ConfigurationSolution {
  Cell cell = Cell::Two;
  double s = 0.0;
  /// (x1, x2, x3) with the cell's left, middle and right particles at 0, 1, 1+s.
  std::array<double, 3> positions{};
  bool degenerate = false;
};

struct CellResult {
  Count count = Count::finite(0);
  std::vector<ConfigurationSolution> solutions;
  std::optional<DegenerateFamily> family;
};

struct CellCount {
  Count e1 = Count::finite(0);
  Count e2 = Count::finite(0);
  Count e3 = Count::finite(0);
  Count total = Count::finite(0);
  std::vector<ConfigurationSolution> solutions;

  const Count& operator[](Cell c) const {
    return c == Cell::One ? e1 : (c == Cell::Two ? e2 : e3);
  }
};

struct AbcTerms {
  double a;
  double b;
  double c;
};

/// A(s), B(s), C(s) for s > 0.
AbcTerms abc_terms(double b, double s);

/// g(s) from the mass-coefficient form m1 A + m2 B + m3 C.
double eval_g_abc(const MassTriple& m, double b, double s);

/// g(s) from the expanded form, term by term as written.
double eval_g_expanded(const MassTriple& m, double b, double s);

/// g(s) from the expanded form rearranged with expm1/log1p so that the
/// O(1) terms cancel exactly; the primary evaluator.
double eval_g(const MassTriple& m, double b, double s);
Evaluation eval_g_with_magnitude(const MassTriple& m, double b, double s);

double eval_g_prime(const MassTriple& m, double b, double s);
Evaluation eval_g_prime_with_magnitude(const MassTriple& m, double b, double s);

/// h(y) on 0 < y < 1 with g''(s) = (1-y)^(1-b) b (b-1) h(y), s = y/(1-y).
double eval_h(const MassTriple& m, double b, double y);

/// H = b (b-1) h as a signomial in y (exponents b-1, b-2, 1, 0).
/// DomainError for b in {0, 1}.
Signomial h_signomial(const MassTriple& m, double b);

std::optional<DegenerateFamily> degenerate_family(const MassTriple& m, double b);

/// Sign of g as s -> 0+ or s -> inf, from the leading-term tables for
/// b < 0, 0 < b < 1, 1 < b < 2, b > 2, falling back to the exact
/// generalized series expansion of g at the endpoint. Zero exactly when g
/// vanishes identically.
Sign endpoint_sign_g(const MassTriple& m, double b, Endpoint endpoint);

/// The fallback alone: sign of the first non-vanishing term of the series
/// expansion of g at the endpoint.
Sign endpoint_sign_g_series(const MassTriple& m, double b, Endpoint endpoint);

/// Same for g'.
Sign endpoint_sign_g_prime(const MassTriple& m, double b, Endpoint endpoint);

/// Masses (left, middle, right) whose Cell-2 count equals the count of the
/// given cell.
MassTriple cell_mass_view(const MassTriple& m, Cell cell);

/// Zeros of g strictly inside the cell.
CellResult count_cell(const MassTriple& m, double b, Cell cell, double tol = kDefaultTolerance);

CellCount count_all(const MassTriple& m, double b, double tol = kDefaultTolerance);

/// m1 x1 + m2 x2 + m3 x3 at the solution. Requires m1 + m2 + m3 = 0
/// (PreconditionError otherwise); vanishes on genuine solutions.
double zero_sum_residual(const MassTriple& m, const ConfigurationSolution& sol);

}  // namespace eulerconf
