#include "eulerconf/qps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bracketing.hpp"

namespace eulerconf {

BivariateSignomial normalize(std::span<const BivariateTerm> raw) {
  std::vector<BivariateTerm> sorted(raw.begin(), raw.end());
  for (const BivariateTerm& t : sorted) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.x_exponent) ||
        !std::isfinite(t.y_exponent)) {
      throw PreconditionError("bivariate terms must be finite");
    }
  }
  auto key = [](const BivariateTerm& t) { return std::pair(t.x_exponent, t.y_exponent); };
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const BivariateTerm& a, const BivariateTerm& b) { return key(a) < key(b); });
  BivariateSignomial out;
  for (std::size_t i = 0; i < sorted.size();) {
    BivariateTerm merged{0.0, sorted[i].x_exponent, sorted[i].y_exponent};
    for (; i < sorted.size() && key(sorted[i]) == key(merged); ++i) {
      merged.coefficient += sorted[i].coefficient;
    }
    if (merged.coefficient != 0.0) out.terms_.push_back(merged);
  }
  return out;
}

BivariateSignomial normalize(std::initializer_list<BivariateTerm> raw) {
  return normalize(std::span<const BivariateTerm>(raw.begin(), raw.size()));
}

Evaluation evaluate_with_magnitude(const BivariateSignomial& f, double x, double y) {
  if (!(x > 0) || !(y > 0)) throw DomainError("bivariate signomials are evaluated at x, y > 0");
  std::vector<double> values;
  values.reserve(f.size());
  for (const BivariateTerm& t : f.terms()) {
    values.push_back(t.coefficient * std::pow(x, t.x_exponent) * std::pow(y, t.y_exponent));
  }
  return detail::sum_by_magnitude(values);
}

double evaluate(const BivariateSignomial& f, double x, double y) {
  return evaluate_with_magnitude(f, x, y).value;
}

LineRestriction restrict_to_line(const BivariateSignomial& f, const AffineConstraint& c) {
  if (c.a2 == 0.0 || !std::isfinite(c.a1) || !std::isfinite(c.a2)) {
    throw DomainError("the constraint must have a finite a1 and a nonzero finite a2");
  }
  // y = (1 - a1 x) / a2 > 0
  if (c.a2 > 0.0) {
    return {f, c, 0.0, c.a1 > 0.0 ? 1.0 / c.a1 : kInfinity};
  }
  if (c.a1 > 0.0) return {f, c, 1.0 / c.a1, kInfinity};
  throw DomainError("the line does not meet the positive quadrant");
}

StraightSystem reduce_to_straight(const BivariateSignomial& trinomial, std::size_t right_index,
                                  const BivariateSignomial& second) {
  if (trinomial.size() != 3) throw PreconditionError("first equation must have three terms");
  if (right_index >= 3) throw PreconditionError("right_index must be 0, 1 or 2");
  auto terms = trinomial.terms();
  const BivariateTerm& r = terms[right_index];
  const BivariateTerm* p = &terms[right_index == 0 ? 1 : 0];
  const BivariateTerm* q = &terms[right_index == 2 ? 1 : 2];
  // Keep the variables in place when the remaining monomials are y and x.
  if (p->x_exponent - r.x_exponent == 0.0 && q->y_exponent - r.y_exponent == 0.0) std::swap(p, q);

  StraightSystem out;
  out.constraint = {-p->coefficient / r.coefficient, -q->coefficient / r.coefficient};

  // New variables u = x^m00 y^m01, v = x^m10 y^m11; a monomial with
  // exponent row (e, f) in (x, y) has row (e, f) M^-1 in (u, v).
  const double m00 = p->x_exponent - r.x_exponent, m01 = p->y_exponent - r.y_exponent;
  const double m10 = q->x_exponent - r.x_exponent, m11 = q->y_exponent - r.y_exponent;
  if (m00 == 1.0 && m01 == 0.0 && m10 == 0.0 && m11 == 1.0) {
    out.second = second;
    return out;
  }
  const double det = m00 * m11 - m01 * m10;
  if (det == 0.0) throw PreconditionError("trinomial monomials are dependent");
  const double i00 = m11 / det, i01 = -m01 / det, i10 = -m10 / det, i11 = m00 / det;
  std::vector<BivariateTerm> raw;
  for (const BivariateTerm& t : second.terms()) {
    raw.push_back({t.coefficient, t.x_exponent * i00 + t.y_exponent * i10,
                   t.x_exponent * i01 + t.y_exponent * i11});
  }
  out.second = normalize(raw);
  return out;
}

BivariateSignomial euler_trinomial() {
  return normalize({{1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {-1.0, 0.0, 1.0}});
}

BivariateSignomial euler_second_equation(const MassTriple& m, double b) {
  return normalize({{m.m2 + m.m3, b, 0.0},
                    {m.m1 + m.m3, 0.0, b},
                    {m.m3, b + 1.0, 0.0},
                    {-m.m3, 0.0, b + 1.0},
                    {-m.m1, 0.0, 1.0},
                    {-m.m2, 1.0, 0.0}});
}

namespace {

constexpr double kProbeSpan = 1e12;
constexpr int kSubProbes = 64;
constexpr int kRefineRounds = 3;
constexpr std::size_t kMaxMinimaPerRound = 256;

struct Probe {
  double x;
  Evaluation e;
  Sign sign;
};

// u in (0, inf) onto the interval, log-dense towards finite ends.
double place(double lo, double hi, double u) {
  if (lo == 0.0 && std::isinf(hi)) return u;
  if (lo == 0.0) return hi * (u / (1.0 + u));
  return lo * (1.0 + u);
}

double between(double a, double b, double t) {
  if (a > 0.0 && b > 4.0 * a) return a * std::pow(b / a, t);
  return a + (b - a) * t;
}

}  // namespace

LineCount count_on_line(const BivariateSignomial& f, const AffineConstraint& c, double tol,
                        std::optional<int> cap) {
  tol = detail::clamp_tolerance(tol);
  const LineRestriction line = restrict_to_line(f, c);
  auto eval = [&](double x) { return line.evaluate(x); };

  std::vector<Probe> probes;
  auto probe = [&](double x) {
    if (!(x > line.lo()) || !(x < line.hi())) return;
    Evaluation e = eval(x);
    if (!std::isfinite(e.value) || !std::isfinite(e.magnitude)) return;
    probes.push_back({x, e, e.certified_sign()});
  };
  const double log_lo = -std::log10(kProbeSpan);
  const double log_hi = std::log10(kProbeSpan);
  for (int i = 0; i < kLineProbes; ++i) {
    double t = static_cast<double>(i) / (kLineProbes - 1);
    probe(place(line.lo(), line.hi(), std::pow(10.0, log_lo + (log_hi - log_lo) * t)));
  }

  // A pair of zeros closer than the probe spacing shows up as a dip of |f|
  // without a sign change; look closer there.
  for (int round = 0; round < kRefineRounds; ++round) {
    std::vector<Probe> resolved;
    for (const Probe& p : probes) {
      if (p.sign != Sign::Zero) resolved.push_back(p);
    }
    std::vector<std::pair<double, double>> windows;
    for (std::size_t i = 1; i + 1 < resolved.size(); ++i) {
      auto rel = [&](std::size_t k) { return std::abs(resolved[k].e.value) / resolved[k].e.magnitude; };
      if (resolved[i - 1].sign == resolved[i].sign && resolved[i + 1].sign == resolved[i].sign &&
          rel(i) < rel(i - 1) && rel(i) < rel(i + 1)) {
        windows.emplace_back(resolved[i - 1].x, resolved[i + 1].x);
      }
    }
    if (windows.empty() || windows.size() > kMaxMinimaPerRound) break;
    for (const auto& [a, b] : windows) {
      for (int k = 1; k < kSubProbes; ++k) probe(between(a, b, static_cast<double>(k) / kSubProbes));
    }
    std::sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) { return a.x < b.x; });
  }

  LineCount out;
  const Probe* last = nullptr;
  for (const Probe& p : probes) {
    if (p.sign == Sign::Zero) continue;
    if (last && last->sign != p.sign) {
      detail::Bracket br = detail::bisect(eval, last->x, p.x, last->sign, tol);
      out.roots.push_back({br.lo, br.hi, br.value, false});
    }
    last = &p;
  }
  if (!last) {
    out.count = RootCount::identically_zero();
    return out;
  }
  out.count = RootCount::finite(static_cast<int>(out.roots.size()));
  if (cap && static_cast<int>(out.roots.size()) == *cap) out.certification = Certification::ExactAtCap;
  return out;
}

std::uint64_t straight_bound(int n) {
  if (n < 1 || n > 63) throw DomainError("straight_bound needs 1 <= n <= 63");
  return (std::uint64_t{1} << n) - 2;
}

std::uint64_t khovanskii_bound(int d1, int d2, int k) {
  if (d1 < 1 || d2 < 1 || k < 0) throw DomainError("khovanskii_bound needs d1, d2 >= 1, k >= 0");
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("khovanskii_bound overflows");
    return r;
  };
  std::uint64_t r = mul(static_cast<std::uint64_t>(d1), static_cast<std::uint64_t>(d2));
  const std::uint64_t base = static_cast<std::uint64_t>(d1) + static_cast<std::uint64_t>(d2) + 1;
  for (int i = 0; i < k; ++i) r = mul(r, base);
  const std::uint64_t halving = static_cast<std::uint64_t>(k) * (k - 1) / 2;
  for (std::uint64_t i = 0; i < halving; ++i) r = mul(r, 2);
  return r;
}

}  // namespace eulerconf
