#include "eulerconf/euler.hpp"

#include <algorithm>
#include <cmath>

#include "bracketing.hpp"

namespace eulerconf {

namespace {

void require_positive(double s) {
  if (!(s > 0) || !std::isfinite(s)) throw DomainError("s must be a positive real");
}

// (1 + t)^c - 1 without cancellation for small t.
double pow1p_minus_one(double c, double t) { return std::expm1(c * std::log1p(t)); }

struct Part {
  double value;
  double magnitude;
};

Evaluation sum_parts(std::span<const Part> parts) {
  std::vector<double> values;
  values.reserve(parts.size());
  double magnitude = 0.0;
  for (const Part& p : parts) {
    values.push_back(p.value);
    magnitude += p.magnitude;
  }
  Evaluation e = detail::sum_by_magnitude(values);
  e.magnitude = std::max(e.magnitude, magnitude);
  return e;
}

// A coefficient is taken as cancelled when it is below rounding of the
// quantities it was computed from.
bool vanishes(double value, double scale) { return std::abs(value) <= 16.0 * kEpsilon * scale; }

double binomial(double c, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (c - i) / (i + 1);
  return r;
}

struct SeriesTerm {
  double coefficient;
  double exponent;
  double scale;
};

// Enough integer orders that the leading non-vanishing term is always among
// the retained ones (two consecutive integer coefficients cannot both vanish
// unless m1 = m3 = 0).
constexpr int kSeriesOrder = 12;

std::vector<SeriesTerm> merge_series(std::vector<SeriesTerm> raw) {
  std::stable_sort(raw.begin(), raw.end(), [](const SeriesTerm& a, const SeriesTerm& b) {
    return a.exponent < b.exponent;
  });
  std::vector<SeriesTerm> out;
  for (const SeriesTerm& t : raw) {
    if (!out.empty() && out.back().exponent == t.exponent) {
      out.back().coefficient += t.coefficient;
      out.back().scale += t.scale;
    } else {
      out.push_back(t);
    }
  }
  return out;
}

// Generalized power series of g at 0+ (exponents b, b+1 and the positive
// integers) or at infinity (exponents b - j, 1, 0).
std::vector<SeriesTerm> g_series(const MassTriple& m, double b, Endpoint endpoint) {
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  const double a1 = std::abs(m1), a2 = std::abs(m2), a3 = std::abs(m3);
  std::vector<SeriesTerm> raw;
  if (endpoint == Endpoint::ZeroPlus) {
    raw.push_back({m2 + m3, b, a2 + a3});
    raw.push_back({m3, b + 1.0, a3});
    for (int k = 1; k <= kSeriesOrder; ++k) {
      double cb = binomial(b, k);
      double cb1 = binomial(b + 1.0, k);
      double coefficient = (m1 + m3) * cb - m3 * cb1;
      double scale = (a1 + a3) * std::abs(cb) + a3 * std::abs(cb1);
      if (k == 1) {
        coefficient -= m1 + m2;
        scale += a1 + a2;
      }
      raw.push_back({coefficient, static_cast<double>(k), scale});
    }
  } else {
    raw.push_back({(m1 + m2 + 2.0 * m3) - m3 * (b + 1.0), b,
                   a1 + a2 + 2.0 * a3 + a3 * std::abs(b + 1.0)});
    for (int j = 1; j <= kSeriesOrder; ++j) {
      double cb = binomial(b, j);
      double cb1 = binomial(b + 1.0, j + 1);
      raw.push_back({(m1 + m3) * cb - m3 * cb1, b - j,
                     (a1 + a3) * std::abs(cb) + a3 * std::abs(cb1)});
    }
    raw.push_back({-(m1 + m2), 1.0, a1 + a2});
    raw.push_back({-m1, 0.0, a1});
  }
  return merge_series(std::move(raw));
}

std::vector<SeriesTerm> differentiate_series(const std::vector<SeriesTerm>& series) {
  std::vector<SeriesTerm> raw;
  for (const SeriesTerm& t : series) {
    if (t.exponent == 0.0) continue;
    raw.push_back({t.coefficient * t.exponent, t.exponent - 1.0,
                   t.scale * std::abs(t.exponent)});
  }
  return merge_series(std::move(raw));
}

Sign leading_sign(const std::vector<SeriesTerm>& series, Endpoint endpoint) {
  auto pick = [](const SeriesTerm& t) {
    return vanishes(t.coefficient, t.scale) ? Sign::Zero : sign_of(t.coefficient);
  };
  if (endpoint == Endpoint::ZeroPlus) {
    for (const SeriesTerm& t : series) {
      if (Sign s = pick(t); s != Sign::Zero) return s;
    }
  } else {
    for (auto it = series.rbegin(); it != series.rend(); ++it) {
      if (Sign s = pick(*it); s != Sign::Zero) return s;
    }
  }
  return Sign::Zero;
}

std::optional<Sign> resolved(double value, double scale) {
  if (vanishes(value, scale)) return std::nullopt;
  return sign_of(value);
}

// Leading and next-to-leading terms of g at the collisions, by regime of b.
// When the leading coefficient (the total mass m_I + m_E of the colliding
// pair) vanishes, the correction term decides.
std::optional<Sign> table_sign(const MassTriple& m, double b, Endpoint endpoint) {
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  const double a1 = std::abs(m1), a2 = std::abs(m2), a3 = std::abs(m3);
  if (b == 0.0 || b == 1.0 || b == 2.0) return std::nullopt;
  if (endpoint == Endpoint::ZeroPlus) {
    if (b < 1.0) {
      if (auto s = resolved(m2 + m3, a2 + a3)) return s;  // (m2+m3) s^b
      if (b > 0.0) {
        double c = (b - 1.0) * m1 - m2 - m3;  // ((b-1)m1 - m2 - m3) s
        return resolved(c, std::abs(b - 1.0) * a1 + a2 + a3);
      }
      return resolved(m3, a3);  // m3 s^(b+1)
    }
    double lead = (b - 1.0) * m1 - m2 - m3;
    if (auto s = resolved(lead, std::abs(b - 1.0) * a1 + a2 + a3)) return s;
    if (b < 2.0) return resolved(m2 + m3, a2 + a3);  // (m2+m3) s^b
    double c = b * (m1 * (b - 1.0) - 2.0 * m3) / 2.0;  // b (m1(b-1) - 2m3) s^2 / 2
    return resolved(c, b * (a1 * std::abs(b - 1.0) + 2.0 * a3) / 2.0);
  }
  if (b < 1.0) {
    if (auto s = resolved(-(m1 + m2), a1 + a2)) return s;  // -(m1+m2) s
    if (b > 0.0) {
      double c = -((b - 1.0) * m3 - m2 - m1);  // -((b-1)m3 - m2 - m1) s^b
      return resolved(c, std::abs(b - 1.0) * a3 + a2 + a1);
    }
    return resolved(-m1, a1);  // -m1
  }
  double lead = -((b - 1.0) * m3 - m2 - m1);
  if (auto s = resolved(lead, std::abs(b - 1.0) * a3 + a2 + a1)) return s;
  if (b < 2.0) return resolved(-(m2 + m1), a1 + a2);  // -(m2+m1) s
  double c = -b * (m3 * (b - 1.0) - 2.0 * m1) / 2.0;  // -b (m3(b-1) - 2m1) s^(b-1) / 2
  return resolved(c, b * (a3 * std::abs(b - 1.0) + 2.0 * a1) / 2.0);
}

std::array<double, 3> positions_for(Cell cell, double s) {
  switch (cell) {
    case Cell::One: return {1.0, 0.0, 1.0 + s};
    case Cell::Two: return {0.0, 1.0, 1.0 + s};
    case Cell::Three: return {0.0, 1.0 + s, 1.0};
  }
  return {};
}

struct PositiveRoot {
  double s;
  bool degenerate;
};

// Zeros of g on s > 0 through the chain g'' -> g' -> g: the zeros of H on
// (0, 1) give the zeros of g'', which split (0, inf) into pieces where g' is
// monotone; the zeros of g' in turn give the monotone pieces of g.
std::vector<PositiveRoot> positive_roots(const MassTriple& m, double b, double tol) {
  std::vector<double> g2_zeros;
  Signomial h = h_signomial(m, b);
  if (!h.empty()) {
    for (const RootRecord& r : count_and_isolate(h, 0.0, 1.0, tol).roots) {
      g2_zeros.push_back(r.value / (1.0 - r.value));
    }
  }

  auto low_point_for = [](auto& f) {
    return [&f](double start, bool artificial, Sign want) {
      if (auto x = detail::ladder_down(f, start, want, artificial)) return *x;
      throw ToleranceError("no certified sign of g near s = 0");
    };
  };
  auto high_point_for = [](auto& f) {
    return [&f](double start, Sign want) {
      if (auto x = detail::ladder_up(f, start, want, false)) return *x;
      throw ToleranceError("no certified sign of g near s = infinity");
    };
  };

  auto gp = [&](double s) { return eval_g_prime_with_magnitude(m, b, s); };
  std::vector<double> g1_zeros;
  for (const auto& r : detail::roots_on_monotone_pieces(
           gp, 0.0, kInfinity, endpoint_sign_g_prime(m, b, Endpoint::ZeroPlus),
           endpoint_sign_g_prime(m, b, Endpoint::Infinity), g2_zeros, tol, low_point_for(gp),
           high_point_for(gp))) {
    g1_zeros.push_back(r.value);
  }

  auto g = [&](double s) { return eval_g_with_magnitude(m, b, s); };
  std::vector<PositiveRoot> out;
  for (const auto& r : detail::roots_on_monotone_pieces(
           g, 0.0, kInfinity, endpoint_sign_g(m, b, Endpoint::ZeroPlus),
           endpoint_sign_g(m, b, Endpoint::Infinity), g1_zeros, tol, low_point_for(g),
           high_point_for(g))) {
    bool degenerate = r.at_breakpoint;
    if (!degenerate) {
      Evaluation d = gp(r.value);
      degenerate = std::abs(d.value) < kDegeneracyThreshold * d.magnitude;
    }
    out.push_back({r.value, degenerate});
  }
  return out;
}

}  // namespace

std::string_view roman_label(DegenerateFamily family) {
  switch (family) {
    case DegenerateFamily::AllMassesZero: return "i";
    case DegenerateFamily::ZeroExponent: return "ii";
    case DegenerateFamily::UnitExponent: return "iii";
    case DegenerateFamily::SquareExponent: return "iv";
    case DegenerateFamily::CubeExponent: return "v";
  }
  return "?";
}

AbcTerms abc_terms(double b, double s) {
  require_positive(s);
  double ps = std::pow(s, b - 1.0);
  double pt = std::pow(1.0 + s, b - 1.0);
  return {(1.0 + s) * (pt - 1.0), s * (ps - 1.0), s * (1.0 + s) * (ps - pt)};
}

double eval_g_abc(const MassTriple& m, double b, double s) {
  AbcTerms t = abc_terms(b, s);
  return m.m1 * t.a + m.m2 * t.b + m.m3 * t.c;
}

double eval_g_expanded(const MassTriple& m, double b, double s) {
  require_positive(s);
  double t = 1.0 + s;
  return (m.m2 + m.m3) * std::pow(s, b) + (m.m1 + m.m3) * std::pow(t, b) +
         m.m3 * (std::pow(s, b + 1.0) - std::pow(t, b + 1.0)) - m.m1 * t - m.m2 * s;
}

Evaluation eval_g_with_magnitude(const MassTriple& m, double b, double s) {
  require_positive(s);
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  const double a1 = std::abs(m1), a2 = std::abs(m2), a3 = std::abs(m3);
  const double sb = std::pow(s, b);
  if (s < 1.0) {
    // (1+s)^c = 1 + E_c(s); the constants m1 + m3 - m3 - m1 cancel exactly.
    double eb = pow1p_minus_one(b, s);
    double eb1 = pow1p_minus_one(b + 1.0, s);
    const Part parts[] = {{(m2 + m3) * sb, (a2 + a3) * sb},
                          {(m1 + m3) * eb, (a1 + a3) * std::abs(eb)},
                          {m3 * s * sb, a3 * s * sb},
                          {-m3 * eb1, a3 * std::abs(eb1)},
                          {-(m1 + m2) * s, (a1 + a2) * s}};
    return sum_parts(parts);
  }
  // (1+s)^c = s^c (1 + D_c(1/s)).
  double u = 1.0 / s;
  double db = pow1p_minus_one(b, u);
  double db1 = pow1p_minus_one(b + 1.0, u);
  const Part parts[] = {{(m1 + m2 + 2.0 * m3) * sb, (a1 + a2 + 2.0 * a3) * sb},
                        {(m1 + m3) * sb * db, (a1 + a3) * sb * std::abs(db)},
                        {-m3 * s * sb * db1, a3 * s * sb * std::abs(db1)},
                        {-m1, a1},
                        {-(m1 + m2) * s, (a1 + a2) * s}};
  return sum_parts(parts);
}

double eval_g(const MassTriple& m, double b, double s) {
  return eval_g_with_magnitude(m, b, s).value;
}

Evaluation eval_g_prime_with_magnitude(const MassTriple& m, double b, double s) {
  require_positive(s);
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  const double a1 = std::abs(m1), a2 = std::abs(m2), a3 = std::abs(m3);
  const double ab = std::abs(b), ab1 = std::abs(b + 1.0);
  const double sb = std::pow(s, b);
  const double sbm1 = std::pow(s, b - 1.0);
  if (s < 1.0) {
    double ebm1 = pow1p_minus_one(b - 1.0, s);
    double eb = pow1p_minus_one(b, s);
    const Part parts[] = {
        {b * (m2 + m3) * sbm1, ab * (a2 + a3) * sbm1},
        {b * (m1 + m3) * ebm1, ab * (a1 + a3) * std::abs(ebm1)},
        {(b + 1.0) * m3 * sb, ab1 * a3 * sb},
        {-(b + 1.0) * m3 * eb, ab1 * a3 * std::abs(eb)},
        {(b - 1.0) * m1 - m2 - m3, std::abs(b - 1.0) * a1 + a2 + a3}};
    return sum_parts(parts);
  }
  double u = 1.0 / s;
  double dbm1 = pow1p_minus_one(b - 1.0, u);
  double db = pow1p_minus_one(b, u);
  const Part parts[] = {{b * (m1 + m2 + 2.0 * m3) * sbm1, ab * (a1 + a2 + 2.0 * a3) * sbm1},
                        {b * (m1 + m3) * sbm1 * dbm1, ab * (a1 + a3) * sbm1 * std::abs(dbm1)},
                        {-(b + 1.0) * m3 * sb * db, ab1 * a3 * sb * std::abs(db)},
                        {-(m1 + m2), a1 + a2}};
  return sum_parts(parts);
}

double eval_g_prime(const MassTriple& m, double b, double s) {
  return eval_g_prime_with_magnitude(m, b, s).value;
}

double eval_h(const MassTriple& m, double b, double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("h is defined for 0 < y < 1");
  if (b == 1.0) throw DomainError("h is undefined at b = 1");
  const double k = 2.0 * m.m3 / (b - 1.0);
  return -(m.m2 - k) * std::pow(y, b - 1.0) + (m.m2 + m.m3) * std::pow(y, b - 2.0) -
         (m.m1 + m.m3) * y + (m.m1 - k);
}

Signomial h_signomial(const MassTriple& m, double b) {
  if (b == 0.0 || b == 1.0) throw DomainError("H = b(b-1)h degenerates at b = 0 and b = 1");
  const double f = b * (b - 1.0);
  const Term raw[] = {{-(f * m.m2 - 2.0 * b * m.m3), b - 1.0},
                      {f * (m.m2 + m.m3), b - 2.0},
                      {-f * (m.m1 + m.m3), 1.0},
                      {f * m.m1 - 2.0 * b * m.m3, 0.0}};
  return normalize(raw);
}

std::optional<DegenerateFamily> degenerate_family(const MassTriple& m, double b) {
  if (m.m1 == 0.0 && m.m2 == 0.0 && m.m3 == 0.0) return DegenerateFamily::AllMassesZero;
  if (b == 0.0 && m.m1 == -m.m2 && m.m1 == m.m3) return DegenerateFamily::ZeroExponent;
  if (b == 1.0) return DegenerateFamily::UnitExponent;
  if (b == 2.0 && m.m2 == 0.0 && m.m1 == m.m3) return DegenerateFamily::SquareExponent;
  if (b == 3.0 && m.m1 == m.m2 && m.m2 == m.m3) return DegenerateFamily::CubeExponent;
  return std::nullopt;
}

Sign endpoint_sign_g_series(const MassTriple& m, double b, Endpoint endpoint) {
  if (degenerate_family(m, b)) return Sign::Zero;
  return leading_sign(g_series(m, b, endpoint), endpoint);
}

Sign endpoint_sign_g(const MassTriple& m, double b, Endpoint endpoint) {
  if (degenerate_family(m, b)) return Sign::Zero;
  if (auto s = table_sign(m, b, endpoint)) return *s;
  return endpoint_sign_g_series(m, b, endpoint);
}

Sign endpoint_sign_g_prime(const MassTriple& m, double b, Endpoint endpoint) {
  if (degenerate_family(m, b)) return Sign::Zero;
  return leading_sign(differentiate_series(g_series(m, b, endpoint)), endpoint);
}

MassTriple cell_mass_view(const MassTriple& m, Cell cell) {
  switch (cell) {
    case Cell::One: return {m.m2, m.m1, m.m3};
    case Cell::Two: return m;
    case Cell::Three: return {m.m1, m.m3, m.m2};
  }
  return m;
}

CellResult count_cell(const MassTriple& m, double b, Cell cell, double tol) {
  tol = detail::clamp_tolerance(tol);
  const MassTriple v = cell_mass_view(m, cell);
  CellResult out;
  if (auto family = degenerate_family(v, b)) {
    out.count = Count::infinite();
    out.family = family;
    return out;
  }

  std::vector<PositiveRoot> roots;
  if (b == 0.0) {
    // g(s) = m2 + m3 - (m1 + m2) s
    double slope = v.m1 + v.m2;
    if (slope != 0.0) {
      double s = (v.m2 + v.m3) / slope;
      if (s > 0.0 && std::isfinite(s)) roots.push_back({s, false});
    }
  } else {
    roots = positive_roots(v, b, tol);
  }

  for (const PositiveRoot& r : roots) {
    out.solutions.push_back({cell, r.s, positions_for(cell, r.s), r.degenerate});
  }
  out.count = Count::finite(static_cast<int>(roots.size()));
  return out;
}

CellCount count_all(const MassTriple& m, double b, double tol) {
  CellCount out;
  Count* slots[] = {&out.e1, &out.e2, &out.e3};
  for (Cell cell : kAllCells) {
    CellResult r = count_cell(m, b, cell, tol);
    *slots[static_cast<int>(cell) - 1] = r.count;
    out.solutions.insert(out.solutions.end(), r.solutions.begin(), r.solutions.end());
  }
  out.total = out.e1 + out.e2 + out.e3;
  return out;
}

double zero_sum_residual(const MassTriple& m, const ConfigurationSolution& sol) {
  double scale = std::abs(m.m1) + std::abs(m.m2) + std::abs(m.m3);
  if (std::abs(m.m1 + m.m2 + m.m3) > 4.0 * kEpsilon * scale) {
    throw PreconditionError("masses must sum to zero");
  }
  const auto& x = sol.positions;
  return m.m1 * x[0] + m.m2 * x[1] + m.m3 * x[2];
}

}  // namespace eulerconf
