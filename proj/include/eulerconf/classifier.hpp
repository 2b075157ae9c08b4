#pragma once

// Closed-form counts over the (m2, b) plane for equal exterior masses
// m1 = m3 = 1, and a grid scanner that checks them against count_all.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerconf/euler.hpp"

namespace eulerconf {

enum class FrontierKind {
  Curve,         // m2 = (2^b - 2b) / (b - 1)
  HalflineLow,   // m2 = -1, b < 1
  HalflineHigh,  // m2 = b - 2, b > 1
  Hyperbola,     // m2 (b - 1) = 2, b > 1
  LineB1,        // b = 1
  SpecialPoint,  // (m2, b) in {(-1, 0), (0, 2), (1, 3)}
};

std::string_view frontier_name(FrontierKind kind);

struct Classified {
  Count value = Count::finite(0);
  bool on_frontier = false;
  std::optional<FrontierKind> frontier;
};

struct RegionClass {
  Count e1 = Count::finite(0);  // equals e3 by symmetry
  Count e2 = Count::finite(0);
  Count total = Count::finite(0);
  bool on_frontier = false;
  std::optional<FrontierKind> frontier;

  Count e3() const { return e1; }
};

/// Coordinates within this relative distance of a frontier are snapped onto it.
inline constexpr double kFrontierSnap = 1e-12;

/// (2^b - 2b) / (b - 1); DomainError at b = 1. On this curve g'(1) = 0.
double frontier_curve_m2(double b);

Classified classify_E2(double m2, double b);
Classified classify_E1(double m2, double b);
RegionClass classify_total(double m2, double b);

/// Euclidean distance in the (m2, b) plane to the nearest frontier, first
/// order in the curved ones.
double frontier_distance(double m2, double b);

struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 2;

  /// Evenly spaced from lo to hi; n >= 2.
  double at(int i) const;
};

struct GridPoint {
  double m2 = 0.0;
  double b = 0.0;
  RegionClass region;
};

struct Mismatch {
  double m2 = 0.0;
  double b = 0.0;
  RegionClass classified;
  std::optional<CellCount> numeric;  // empty when counting threw
  std::string message;
};

struct GridResult {
  std::vector<GridPoint> points;  // b outer, m2 inner
  std::vector<Mismatch> mismatches;
  int checked = 0;
};

struct GridOptions {
  bool cross_check = false;
  double margin = 0.05;
  int workers = 1;
  double tol = kDefaultTolerance;
};

/// PreconditionError for n < 1, lo > hi or non-finite bounds.
GridResult grid_scan(const GridRange& m2_range, const GridRange& b_range,
                     const GridOptions& options = {});

}  // namespace eulerconf
