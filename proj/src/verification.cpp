#include "eulerconf/verification.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "eulerconf/classifier.hpp"
#include "eulerconf/qps.hpp"

namespace eulerconf::verification {

namespace {

constexpr int kResyncEvery = 1000;
constexpr int kOracleBisections = 200;

int sign_int(double v) { return (v > 0) - (v < 0); }

template <class F>
double bisect_plain(F&& f, double lo, double hi, int sign_lo) {
  for (int i = 0; i < kOracleBisections; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    int s = sign_int(f(mid));
    if (s == 0) return mid;
    (s == sign_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double plain_value(const Signomial& p, double x) {
  double v = 0.0;
  for (const Term& t : p.terms()) v += t.coefficient * std::pow(x, t.exponent);
  return v;
}

std::vector<double> log_samples(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace

std::vector<double> dense_scan_roots(const Signomial& p, double lo, double hi, int points) {
  const auto terms = p.terms();
  const std::size_t n = terms.size();
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (points - 1);
  std::vector<double> power(n), ratio(n);
  for (std::size_t j = 0; j < n; ++j) ratio[j] = std::exp(terms[j].exponent * step);

  std::vector<double> roots;
  double prev_x = 0.0;
  int prev_sign = 0;
  for (int i = 0; i < points; ++i) {
    const double x = std::exp(log_lo + step * i);
    if (i % kResyncEvery == 0) {
      for (std::size_t j = 0; j < n; ++j) power[j] = std::pow(x, terms[j].exponent);
    } else {
      for (std::size_t j = 0; j < n; ++j) power[j] *= ratio[j];
    }
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) v += terms[j].coefficient * power[j];
    const int s = sign_int(v);
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) {
      roots.push_back(bisect_plain([&](double t) { return plain_value(p, t); }, prev_x, x, prev_sign));
    }
    prev_sign = s;
    prev_x = x;
  }
  return roots;
}

std::vector<double> scan_roots(const std::function<double(double)>& f,
                               const std::vector<double>& samples) {
  std::vector<double> roots;
  double prev_x = 0.0;
  int prev_sign = 0;
  for (double x : samples) {
    const int s = sign_int(f(x));
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) roots.push_back(bisect_plain(f, prev_x, x, prev_sign));
    prev_sign = s;
    prev_x = x;
  }
  return roots;
}

double determinant_g(const MassTriple& m, double b, double s) {
  const double t = 1.0 + s;
  const double ps = std::pow(std::abs(s), b - 1.0);
  const double pt = std::pow(std::abs(t), b - 1.0);
  return m.m1 * t * (pt - 1.0) + m.m2 * s * (ps - 1.0) + m.m3 * s * t * (ps - pt);
}

LineCounts line_oracle_counts(const MassTriple& m, double b, int points_per_piece) {
  auto g = [&](double s) { return determinant_g(m, b, s); };
  const std::vector<double> v = log_samples(1e-6, 1e6, points_per_piece);
  std::vector<double> right(v), middle, left;
  for (double u : v) {
    middle.push_back(-u / (1.0 + u));  // (-1, 0), dense at both ends
    left.push_back(-1.0 - u);
  }
  std::reverse(middle.begin(), middle.end());
  std::reverse(left.begin(), left.end());
  LineCounts out;
  out.e2 = static_cast<int>(scan_roots(g, right).size());
  out.e3 = static_cast<int>(scan_roots(g, middle).size());
  out.e1 = static_cast<int>(scan_roots(g, left).size());
  return out;
}

std::array<double, 6> euler_quintic(const MassTriple& m) {
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  return {m2 + m3, 2 * m2 + 3 * m3, m2 + 3 * m3, -(3 * m1 + m2), -(3 * m1 + 2 * m2), -(m1 + m2)};
}

std::array<double, 4> vortex_cubic(const MassTriple& m) {
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  return {m2 + m3, m2 + 2 * m3, -(2 * m1 + m2), -(m1 + m2)};
}

std::pair<double, double> horner(std::span<const double> ascending, double x) {
  double v = 0.0, mag = 0.0;
  for (std::size_t i = ascending.size(); i-- > 0;) {
    v = v * x + ascending[i];
    mag = mag * std::abs(x) + std::abs(ascending[i]);
  }
  return {v, mag};
}

int coefficient_sign_changes(std::span<const double> ascending) {
  int changes = 0, last = 0;
  for (double c : ascending) {
    int s = sign_int(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double single_positive_root(std::span<const double> ascending) {
  if (coefficient_sign_changes(ascending) != 1 || ascending.back() == 0.0) {
    throw PreconditionError("expected one sign change and a nonzero leading coefficient");
  }
  double bound = 0.0;
  for (double c : ascending) bound = std::max(bound, std::abs(c / ascending.back()));
  auto f = [&](double x) { return horner(ascending, x).first; };
  double lo = 0.0;
  int sign_lo = sign_int(f(lo));
  if (sign_lo == 0) {
    // Leading zeros of the coefficient list: step off the origin.
    lo = 1e-300;
    sign_lo = sign_int(f(lo));
  }
  return bisect_plain(f, lo, 1.0 + bound, sign_lo);
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

MassTriple random_masses(Rng& rng, double lo, double hi) {
  double m1 = uniform(rng, lo, hi);
  double m2 = uniform(rng, lo, hi);
  double m3 = uniform(rng, lo, hi);
  return {m1, m2, m3};
}

bool in_any_family(const MassTriple& m, double b) {
  for (Cell c : kAllCells) {
    if (degenerate_family(cell_mass_view(m, c), b)) return true;
  }
  return false;
}

std::string describe(const MassTriple& m, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "m=(" << m.m1 << "," << m.m2 << "," << m.m3 << ") b=" << b;
  return os.str();
}

std::string counts_text(const CellCount& c) {
  return c.e1.to_string() + "," + c.e2.to_string() + "," + c.e3.to_string() + " total " +
         c.total.to_string();
}

// Collects the first failure and the number of checks made.
struct Tally {
  int checks = 0;
  int failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  CriterionResult result(int id, std::string name, std::string summary) const {
    std::string detail = std::move(summary) + "; " + std::to_string(checks - failures) + "/" +
                         std::to_string(checks) + " checks passed";
    if (failures > 0) detail += "; first failure: " + first;
    return {id, std::move(name), failures == 0, detail};
  }
};

CriterionResult euler_classic(Rng& rng) {
  Tally t;
  for (int i = 0; i < 200; ++i) {
    MassTriple m = random_masses(rng, 0.1, 10.0);
    auto q = euler_quintic(m);
    t.check(coefficient_sign_changes(q) == 1, "quintic sign changes != 1 at " + describe(m, -2));
    CellResult r = count_cell(m, -2.0, Cell::Two);
    bool one = r.count == Count::finite(1);
    t.check(one, "count_cell != 1 at " + describe(m, -2));
    if (!one) continue;
    double s = r.solutions.front().s;
    double expected = single_positive_root(q);
    t.check(std::abs(s - expected) <= 1e-9 * expected, "root differs from the quintic's at " +
                                                          describe(m, -2));
  }
  return t.result(1, "Euler quintic, positive masses at b=-2", "200 draws in [0.1,10]^3");
}

CriterionResult vortex_bound(Rng& rng) {
  Tally t;
  int drawn = 0;
  while (drawn < 1000) {
    MassTriple m = random_masses(rng, -10.0, 10.0);
    if (in_any_family(m, -1.0)) continue;
    ++drawn;
    CellCount c = count_all(m, -1.0);
    t.check(!c.total.is_infinite() && c.total.value() <= 3,
            "total " + c.total.to_string() + " at " + describe(m, -1));
  }
  return t.result(2, "vortices: total <= 3 at b=-1", "1000 draws in [-10,10]^3");
}

CriterionResult middle_cell_bound(Rng& rng) {
  Tally t;
  int drawn = 0, threes = 0;
  while (drawn < 1000) {
    MassTriple m = random_masses(rng, -10.0, 10.0);
    double b = uniform(rng, -5.0, 5.0);
    if (in_any_family(m, b)) continue;
    ++drawn;
    CellResult r = count_cell(m, b, Cell::Two);
    bool finite = !r.count.is_infinite();
    t.check(finite && r.count.value() <= 3, "E2 " + r.count.to_string() + " at " + describe(m, b));
    if (finite && r.count.value() == 3) {
      ++threes;
      bool any = std::any_of(r.solutions.begin(), r.solutions.end(),
                             [](const ConfigurationSolution& s) { return s.degenerate; });
      t.check(!any, "degenerate root with E2 = 3 at " + describe(m, b));
    }
  }
  return t.result(3, "per-cell bound E2 <= 3",
                  "1000 draws in [-10,10]^3 x [-5,5], " + std::to_string(threes) + " with E2 = 3");
}

CriterionResult positive_masses(Rng& rng) {
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    MassTriple m = random_masses(rng, 0.1, 10.0);
    double b = uniform(rng, -5.0, 0.99);
    CellCount c = count_all(m, b);
    bool ok = c.e1 == Count::finite(1) && c.e2 == Count::finite(1) && c.e3 == Count::finite(1);
    t.check(ok, counts_text(c) + " at " + describe(m, b));
  }
  return t.result(4, "positive masses, b < 1: one per cell", "1000 draws, b in [-5,0.99]");
}

CriterionResult total_split(Rng& rng) {
  Tally t;
  for (int pass = 0; pass < 2; ++pass) {
    const bool negative = pass == 0;
    const int limit = negative ? 3 : 5;
    int drawn = 0;
    while (drawn < 500) {
      MassTriple m = random_masses(rng, -10.0, 10.0);
      double b = negative ? uniform(rng, -5.0, 0.0) : uniform(rng, 0.0, 1.0);
      if (b == 0.0 || in_any_family(m, b)) continue;
      ++drawn;
      CellCount c = count_all(m, b);
      t.check(!c.total.is_infinite() && c.total.value() <= limit,
              "total " + c.total.to_string() + " at " + describe(m, b));
    }
  }
  const MassTriple m{1.0, -0.9, 1.0};
  CellCount c = count_all(m, 0.5);
  t.check(c.total == Count::finite(5), "(1,-0.9,1) at b=0.5 gives " + counts_text(c));
  LineCounts o = line_oracle_counts(m, 0.5, 1000000);
  t.check(o.e1 == 1 && o.e2 == 3 && o.e3 == 1,
          "oracle gives " + std::to_string(o.e1) + "," + std::to_string(o.e2) + "," +
              std::to_string(o.e3) + " at (1,-0.9,1) b=0.5");
  return t.result(5, "total <= 3 for b < 0, <= 5 for 0 < b < 1",
                  "500 + 500 draws, (1,-0.9,1) at b=0.5 total " + c.total.to_string());
}

CriterionResult zero_sum_cases() {
  Tally t;
  for (double b : {-2.0, -1.0}) {
    CellCount c = count_all({0.0, -1.0, 1.0}, b);
    t.check(c.total == Count::finite(0), "(0,-1,1) gives " + counts_text(c) + " at b=" +
                                             std::to_string(b));
  }
  const MassTriple m{1.0, 2.0, -3.0};
  CellCount c = count_all(m, -2.0);
  t.check(c.total == Count::finite(1), "(1,2,-3) at b=-2 gives " + counts_text(c));
  double worst = 0.0;
  for (const ConfigurationSolution& sol : c.solutions) {
    worst = std::max(worst, std::abs(zero_sum_residual(m, sol)));
  }
  t.check(!c.solutions.empty() && worst < 1e-9, "residual " + std::to_string(worst));
  std::ostringstream os;
  os << "residual " << worst;
  return t.result(6, "zero-count and zero-sum cases", os.str());
}

CriterionResult expansions(Rng& rng) {
  Tally t;
  double worst_poly = 0.0, worst_transform = 0.0;
  for (int i = 0; i < 100; ++i) {
    MassTriple m = random_masses(rng, -10.0, 10.0);
    double s = log_uniform(rng, 1e-2, 1e2);
    const double ss = s * s * (1 + s) * (1 + s);
    auto [q, qmag] = horner(euler_quintic(m), s);
    for (double g : {eval_g(m, -2, s), eval_g_abc(m, -2, s), eval_g_expanded(m, -2, s)}) {
      double rel = std::abs(ss * g - q) / qmag;
      worst_poly = std::max(worst_poly, rel);
      t.check(rel <= 1e-9, "quintic identity off by " + std::to_string(rel) + " at " +
                               describe(m, -2) + " s=" + std::to_string(s));
    }
    const double sc = s * (1 + s);
    auto [c, cmag] = horner(vortex_cubic(m), s);
    for (double g : {eval_g(m, -1, s), eval_g_abc(m, -1, s), eval_g_expanded(m, -1, s)}) {
      double rel = std::abs(sc * g - c) / cmag;
      worst_poly = std::max(worst_poly, rel);
      t.check(rel <= 1e-9, "cubic identity off by " + std::to_string(rel) + " at " +
                               describe(m, -1) + " s=" + std::to_string(s));
    }
  }
  for (int i = 0; i < 100; ++i) {
    MassTriple m = random_masses(rng, -10.0, 10.0);
    double b = uniform(rng, -5.0, 5.0);
    if (std::abs(b) < 0.05 || std::abs(b - 1.0) < 0.05) {
      --i;
      continue;
    }
    double s = log_uniform(rng, 0.05, 20.0);
    double h = 1e-3 * s;
    auto g = [&](double x) { return eval_g(m, b, x); };
    double fd = (-g(s + 2 * h) + 16 * g(s + h) - 30 * g(s) + 16 * g(s - h) - g(s - 2 * h)) /
                (12 * h * h);
    double y = s / (1 + s);
    Signomial hs = h_signomial(m, b);
    Evaluation hv = evaluate_with_magnitude(hs, y);
    double factor = std::pow(1 - y, 1 - b);
    double rel = std::abs(fd - factor * hv.value) / (factor * hv.magnitude);
    worst_transform = std::max(worst_transform, rel);
    t.check(rel <= 1e-5, "second-derivative transform off by " + std::to_string(rel) + " at " +
                             describe(m, b) + " s=" + std::to_string(s));
  }
  std::ostringstream os;
  os << "worst polynomial identity " << worst_poly << ", worst transform " << worst_transform
     << " (relative to term magnitudes)";
  return t.result(7, "expansion equivalences", os.str());
}

CriterionResult degenerate_families(Rng& rng) {
  struct Base {
    MassTriple m;
    double b;
  };
  const Base bases[] = {{{0, 0, 0}, -2}, {{1, -1, 1}, 0}, {{1, 1, 1}, 1}, {{1, 0, 1}, 2}, {{1, 1, 1}, 3}};
  Tally t;
  for (const Base& base : bases) {
    CellResult r = count_cell(base.m, base.b, Cell::Two);
    t.check(r.count.is_infinite() && count_all(base.m, base.b).total.is_infinite(),
            "not infinite at " + describe(base.m, base.b));
    for (int i = 0; i < 100; ++i) {
      MassTriple m{base.m.m1 + uniform(rng, -1e-3, 1e-3), base.m.m2 + uniform(rng, -1e-3, 1e-3),
                   base.m.m3 + uniform(rng, -1e-3, 1e-3)};
      double b = base.b + uniform(rng, -1e-3, 1e-3);
      try {
        CellCount c = count_all(m, b);
        t.check(!c.total.is_infinite(), "infinite after perturbation at " + describe(m, b));
      } catch (const std::exception& e) {
        t.check(false, std::string(e.what()) + " at " + describe(m, b));
      }
    }
  }
  return t.result(8, "degenerate families", "5 base points, 100 perturbations of 1e-3 each");
}

// Where the classified value changes along b = const, to bisection width.
std::vector<double> boundaries(Classified (*classify)(double, double), double b, double lo,
                               double hi) {
  std::vector<double> out;
  const int n = 601;
  auto value = [&](double m2) { return classify(m2, b).value; };
  double prev = lo;
  for (int i = 1; i < n; ++i) {
    double x = lo + (hi - lo) * i / (n - 1);
    if (value(x) == value(prev)) {
      prev = x;
      continue;
    }
    const Count left = value(prev);
    auto edge = [&](double a, double c, auto is_left) {
      while (c - a > 1e-16 * std::max(1.0, std::abs(a))) {
        double mid = 0.5 * (a + c);
        if (mid <= a || mid >= c) break;
        (is_left(mid) ? a : c) = mid;
      }
      return 0.5 * (a + c);
    };
    // Both edges of the snapped frontier band; the frontier is its centre.
    double lower = edge(prev, x, [&](double m2) {
      Classified k = classify(m2, b);
      return !k.on_frontier && k.value == left;
    });
    // The sample x itself may lie in the band.
    double upper = edge(prev, x + (x - prev), [&](double m2) {
      Classified k = classify(m2, b);
      return k.on_frontier || k.value == left;
    });
    out.push_back(0.5 * (lower + upper));
    prev = x;
  }
  return out;
}

CriterionResult figure_reconstruction() {
  Tally t;
  GridResult grid = grid_scan({-4.0, 2.0, 50}, {-4.0, 4.0, 50}, {true, 0.05, 1});
  for (const Mismatch& m : grid.mismatches) {
    t.check(false, "mismatch at m2=" + std::to_string(m.m2) + " b=" + std::to_string(m.b) + ": " +
                       m.message);
  }
  t.check(true, "grid");
  const double curve = -4.25 / 3.0;
  t.check(std::abs(frontier_curve_m2(-2.0) - curve) <= 1e-12, "frontier_curve_m2(-2)");
  auto e2 = boundaries(classify_E2, -2.0, -4.0, 2.0);
  auto e1 = boundaries(classify_E1, -2.0, -4.0, 2.0);
  bool e2_ok = e2.size() == 2 && std::abs(e2[0] - curve) <= 1e-12 && std::abs(e2[1] + 1) <= 1e-12;
  bool e1_ok = e1.size() == 1 && std::abs(e1[0] + 1) <= 1e-12;
  t.check(e2_ok, "E2 boundaries along b=-2 are not {-1.41666.., -1}");
  t.check(e1_ok, "E1 boundary along b=-2 is not -1");
  std::ostringstream os;
  os.precision(15);
  os << grid.checked << " of " << grid.points.size() << " grid points cross-checked, "
     << grid.mismatches.size() << " mismatches; boundaries at b=-2:";
  for (double x : e2) os << ' ' << x;
  return t.result(9, "parameter-plane reconstruction", os.str());
}

Signomial random_signomial(Rng& rng) {
  const int n = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<double> exponents;
  while (static_cast<int>(exponents.size()) < n) {
    double e = uniform(rng, -5.0, 5.0);
    bool apart = std::all_of(exponents.begin(), exponents.end(),
                             [&](double f) { return std::abs(e - f) >= 1e-3; });
    if (apart) exponents.push_back(e);
  }
  std::vector<Term> raw;
  for (double e : exponents) {
    double c = 0.0;
    while (c == 0.0) c = uniform(rng, -10.0, 10.0);
    raw.push_back({c, e});
  }
  return normalize(raw);
}

CriterionResult laguerre_engine(Rng& rng) {
  Tally t;
  for (int i = 0; i < 500; ++i) {
    Signomial p = random_signomial(rng);
    std::ostringstream name;
    name.precision(17);
    name << "p=";
    for (const Term& term : p.terms()) name << '[' << term.coefficient << ',' << term.exponent << ']';
    const int n = static_cast<int>(p.size());
    const int v = sign_variations(p);
    int whole = count_and_isolate(p).count.value();
    t.check(whole <= std::min(v, n - 1), "count above min(V, n-1) for " + name.str());
    int finite = count_and_isolate(p, 1e-6, 1e6).count.value();
    int oracle = static_cast<int>(dense_scan_roots(p).size());
    t.check(finite == oracle, "certified " + std::to_string(finite) + " vs oracle " +
                                  std::to_string(oracle) + " for " + name.str());
    auto chain = derivative_chain(p);
    for (std::size_t k = 1; k < chain.size(); ++k) {
      bool drops = sign_variations(chain[k]) == sign_variations(chain[k - 1]) - 1 &&
                   chain[k].size() == chain[k - 1].size() - 1;
      t.check(drops, "chain link " + std::to_string(k) + " does not drop one variation for " +
                         name.str());
    }
  }
  return t.result(10, "Laguerre engine against dense scans", "500 random signomials");
}

CriterionResult bound_formulas(Rng& rng) {
  Tally t;
  t.check(straight_bound(6) == 62, "straight_bound(6)");
  t.check(khovanskii_bound(1, 2, 4) == 32768, "khovanskii_bound(1,2,4)");
  int drawn = 0;
  while (drawn < 50) {
    MassTriple m = random_masses(rng, -10.0, 10.0);
    double b = uniform(rng, -5.0, 5.0);
    if (in_any_family(m, b)) continue;
    ++drawn;
    StraightSystem sys = reduce_to_straight(euler_trinomial(), 0, euler_second_equation(m, b));
    LineCount line = count_on_line(sys.second, sys.constraint);
    CellResult cell = count_cell(m, b, Cell::Two);
    t.check(line.count.as_integer() == cell.count.value(),
            "line " + std::to_string(line.count.as_integer()) + " vs cell " +
                cell.count.to_string() + " at " + describe(m, b));
  }
  return t.result(11, "bound formulas and the reduced Euler system",
                  "straight_bound(6)=" + std::to_string(straight_bound(6)) +
                      ", khovanskii_bound(1,2,4)=" + std::to_string(khovanskii_bound(1, 2, 4)) +
                      ", 50 draws");
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) throw PreconditionError("no such criterion");
  Rng rng(seed + static_cast<std::uint64_t>(id));
  try {
    switch (id) {
      case 1: return euler_classic(rng);
      case 2: return vortex_bound(rng);
      case 3: return middle_cell_bound(rng);
      case 4: return positive_masses(rng);
      case 5: return total_split(rng);
      case 6: return zero_sum_cases();
      case 7: return expansions(rng);
      case 8: return degenerate_families(rng);
      case 9: return figure_reconstruction();
      case 10: return laguerre_engine(rng);
      case 11: return bound_formulas(rng);
    }
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  return {};
}

std::vector<CriterionResult> run_acceptance(
    std::uint64_t seed, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, seed));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace eulerconf::verification
