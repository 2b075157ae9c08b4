#include "eulerconf/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace eulerconf {

namespace {

bool near(double a, double b) {
  return std::abs(a - b) <= kFrontierSnap * std::max({1.0, std::abs(a), std::abs(b)});
}

struct SpecialPoint {
  double m2;
  double b;
};

constexpr SpecialPoint kSpecialPoints[] = {{-1.0, 0.0}, {0.0, 2.0}, {1.0, 3.0}};

bool on_unit_line(double b) { return near(b, 1.0); }

bool at_special_point(double m2, double b, bool e2) {
  for (const SpecialPoint& p : kSpecialPoints) {
    // Only (1, 3) makes the exterior cells degenerate.
    if (!e2 && p.b != 3.0) continue;
    if (near(m2, p.m2) && near(b, p.b)) return true;
  }
  return false;
}

Classified infinite(FrontierKind kind) { return {Count::infinite(), true, kind}; }

Classified frontier(int value, FrontierKind kind) { return {Count::finite(value), true, kind}; }

double curve_slope(double b) {
  double d = b - 1.0;
  double p = std::exp2(b);
  return ((p * std::log(2.0) - 2.0) * d - (p - 2.0 * b)) / (d * d);
}

double line_distance(double m2, double value, double slope) {
  return std::abs(m2 - value) / std::sqrt(1.0 + slope * slope);
}

}  // namespace

std::string_view frontier_name(FrontierKind kind) {
  switch (kind) {
    case FrontierKind::Curve: return "curve";
    case FrontierKind::HalflineLow: return "halfline_low";
    case FrontierKind::HalflineHigh: return "halfline_high";
    case FrontierKind::Hyperbola: return "hyperbola";
    case FrontierKind::LineB1: return "line_b1";
    case FrontierKind::SpecialPoint: return "special_point";
  }
  return "?";
}

double frontier_curve_m2(double b) {
  if (b == 1.0) throw DomainError("the frontier curve is undefined at b = 1");
  return (std::exp2(b) - 2.0 * b) / (b - 1.0);
}

Classified classify_E2(double m2, double b) {
  if (on_unit_line(b)) return infinite(FrontierKind::LineB1);
  if (at_special_point(m2, b, true)) return infinite(FrontierKind::SpecialPoint);
  if (near(m2, frontier_curve_m2(b))) return frontier(1, FrontierKind::Curve);
  if (b < 1.0 && near(m2, -1.0)) return frontier(1, FrontierKind::HalflineLow);
  if (b > 1.0 && near(m2, b - 2.0)) return frontier(1, FrontierKind::HalflineHigh);

  // g(1) = 0 and zeros pair up as s <-> 1/s, so (0, 1) holds at most one
  // zero; it is there exactly when g changes sign between 0+ and 1-.
  Sign at_zero = endpoint_sign_g({1.0, m2, 1.0}, b, Endpoint::ZeroPlus);
  double g_prime_at_one = 2.0 * b - std::exp2(b) + m2 * (b - 1.0);
  Sign below_one = sign_of(-g_prime_at_one);
  return {Count::finite(at_zero != below_one ? 3 : 1), false, std::nullopt};
}

Classified classify_E1(double m2, double b) {
  if (on_unit_line(b)) return infinite(FrontierKind::LineB1);
  if (at_special_point(m2, b, false)) return infinite(FrontierKind::SpecialPoint);
  if (b < 1.0) {
    if (near(m2, -1.0)) return frontier(0, FrontierKind::HalflineLow);
    return {Count::finite(m2 > -1.0 ? 1 : 0), false, std::nullopt};
  }
  const double low = b - 2.0;
  const double high = 2.0 / (b - 1.0);
  if (near(m2, low)) return frontier(0, FrontierKind::HalflineHigh);
  if (near(m2, high)) return frontier(0, FrontierKind::Hyperbola);
  bool inside = m2 > std::min(low, high) && m2 < std::max(low, high);
  return {Count::finite(inside ? 1 : 0), false, std::nullopt};
}

RegionClass classify_total(double m2, double b) {
  Classified e1 = classify_E1(m2, b);
  Classified e2 = classify_E2(m2, b);
  RegionClass out;
  out.e1 = e1.value;
  out.e2 = e2.value;
  // The frontier values above give total = 2 e1 + e2 directly: the smaller
  // side where the total jumps, and 1 where it is 3 on both sides.
  out.total = e1.value + e1.value + e2.value;
  out.on_frontier = e1.on_frontier || e2.on_frontier;
  out.frontier = e2.frontier ? e2.frontier : e1.frontier;
  return out;
}

double frontier_distance(double m2, double b) {
  double d = std::abs(b - 1.0);
  for (const SpecialPoint& p : kSpecialPoints) d = std::min(d, std::hypot(m2 - p.m2, b - p.b));
  if (b != 1.0) {
    d = std::min(d, line_distance(m2, frontier_curve_m2(b), curve_slope(b)));
  }
  // Both half-lines end at (-1, 1).
  const double to_corner = std::hypot(m2 + 1.0, b - 1.0);
  if (b < 1.0) {
    d = std::min(d, std::abs(m2 + 1.0));
  } else {
    d = std::min(d, line_distance(m2, b - 2.0, 1.0));
    double db = b - 1.0;
    d = std::min(d, line_distance(m2, 2.0 / db, -2.0 / (db * db)));
  }
  return std::min(d, to_corner);
}

double GridRange::at(int i) const {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

namespace {

void validate(const GridRange& r, const char* name) {
  if (r.n < 2) throw PreconditionError(std::string(name) + " resolution must be at least 2");
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw PreconditionError(std::string(name) + " range must satisfy lo <= hi");
  }
}

bool same(const RegionClass& c, const CellCount& n) {
  return c.e1 == n.e1 && c.e2 == n.e2 && c.e3() == n.e3 && c.total == n.total;
}

std::optional<Mismatch> cross_check(const GridPoint& p, const GridOptions& options) {
  Mismatch m{p.m2, p.b, p.region, std::nullopt, {}};
  try {
    m.numeric = count_all({1.0, p.m2, 1.0}, p.b, options.tol);
  } catch (const std::exception& e) {
    m.message = e.what();
    return m;
  }
  if (same(p.region, *m.numeric)) return std::nullopt;
  m.message = "classified and numeric counts differ";
  return m;
}

}  // namespace

GridResult grid_scan(const GridRange& m2_range, const GridRange& b_range,
                     const GridOptions& options) {
  validate(m2_range, "m2");
  validate(b_range, "b");
  const std::size_t total = static_cast<std::size_t>(m2_range.n) * b_range.n;

  GridResult out;
  out.points.resize(total);
  std::vector<std::optional<Mismatch>> failures(total);
  std::vector<char> checked(total, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      GridPoint& p = out.points[k];
      p.b = b_range.at(static_cast<int>(k / m2_range.n));
      p.m2 = m2_range.at(static_cast<int>(k % m2_range.n));
      p.region = classify_total(p.m2, p.b);
      if (options.cross_check && frontier_distance(p.m2, p.b) > options.margin) {
        checked[k] = 1;
        failures[k] = cross_check(p, options);
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.workers, 1)), 1, total);
  if (workers == 1) {
    work(0, total);
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t begin = 0; begin < total; begin += chunk) {
      threads.emplace_back(work, begin, std::min(total, begin + chunk));
    }
    for (std::thread& t : threads) t.join();
  }

  for (std::size_t k = 0; k < total; ++k) {
    out.checked += checked[k];
    if (failures[k]) out.mismatches.push_back(std::move(*failures[k]));
  }
  return out;
}

}  // namespace eulerconf
