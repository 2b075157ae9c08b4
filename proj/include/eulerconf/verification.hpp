#pragma once

// Independent oracles and the acceptance criteria. The oracles use plain
// evaluation and sign-change scans only, never the certified machinery they
// are compared against.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulerconf/euler.hpp"
#include "eulerconf/signomial.hpp"

namespace eulerconf::verification {

/// Roots of p on [lo, hi] from sign changes over `points` log-spaced samples,
/// each refined by plain bisection. Powers are advanced by a constant ratio
/// and recomputed exactly every 1000 samples.
std::vector<double> dense_scan_roots(const Signomial& p, double lo = 1e-6, double hi = 1e6,
                                     int points = 1000000);

/// Sign changes of f over the given increasing samples, refined by bisection.
std::vector<double> scan_roots(const std::function<double(double)>& f,
                               const std::vector<double>& samples);

/// g(s) from the determinant form with absolute values, valid for every real
/// s other than -1 and 0: s > 0 is Cell 2, -1 < s < 0 is Cell 3 and s < -1
/// is Cell 1.
double determinant_g(const MassTriple& m, double b, double s);

struct LineCounts {
  int e1 = 0;
  int e2 = 0;
  int e3 = 0;
  int total() const { return e1 + e2 + e3; }
};

/// Zeros of determinant_g on the whole punctured line, per cell, by dense
/// scans reaching within 1e-6 of each puncture and out to 1e6.
LineCounts line_oracle_counts(const MassTriple& m, double b, int points_per_piece = 200000);

/// (1+s)^2 s^2 g(s) at b = -2, coefficients of s^0 .. s^5.
std::array<double, 6> euler_quintic(const MassTriple& m);

/// (1+s) s g(s) at b = -1, coefficients of s^0 .. s^3.
std::array<double, 4> vortex_cubic(const MassTriple& m);

/// Horner value and the sum of term magnitudes.
std::pair<double, double> horner(std::span<const double> ascending, double x);

/// Coefficient sign changes, zeros skipped.
int coefficient_sign_changes(std::span<const double> ascending);

/// The positive root of a polynomial with one sign change, by bisection.
double single_positive_root(std::span<const double> ascending);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr int kCriterionCount = 11;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Criterion 1 .. 11; PreconditionError for other ids.
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);

std::vector<CriterionResult> run_acceptance(
    std::uint64_t seed = kDefaultSeed,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace eulerconf::verification
