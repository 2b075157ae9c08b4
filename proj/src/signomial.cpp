#include "eulerconf/signomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bracketing.hpp"

namespace eulerconf {

Signomial normalize(std::span<const Term> raw) {
  std::vector<Term> sorted(raw.begin(), raw.end());
  for (const Term& t : sorted) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent)) {
      throw PreconditionError("signomial terms must be finite");
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  Signomial out;
  for (std::size_t i = 0; i < sorted.size();) {
    double exponent = sorted[i].exponent;
    double coefficient = 0.0;
    for (; i < sorted.size() && sorted[i].exponent == exponent; ++i) {
      coefficient += sorted[i].coefficient;
    }
    if (coefficient != 0.0) out.terms_.push_back({coefficient, exponent});
  }
  return out;
}

Signomial normalize(std::initializer_list<Term> raw) {
  return normalize(std::span<const Term>(raw.begin(), raw.size()));
}

Evaluation evaluate_with_magnitude(const Signomial& p, double x) {
  if (!(x > 0)) throw DomainError("signomials are evaluated at x > 0");
  std::vector<double> values;
  values.reserve(p.size());
  for (const Term& t : p.terms()) values.push_back(t.coefficient * std::pow(x, t.exponent));
  return detail::sum_by_magnitude(values);
}

double evaluate(const Signomial& p, double x) { return evaluate_with_magnitude(p, x).value; }

Signomial derivative(const Signomial& p) {
  std::vector<Term> raw;
  raw.reserve(p.size());
  for (const Term& t : p.terms()) raw.push_back({t.coefficient * t.exponent, t.exponent - 1.0});
  return normalize(raw);
}

Signomial shift_and_differentiate(const Signomial& p, double pivot_exponent) {
  auto terms = p.terms();
  bool found = std::any_of(terms.begin(), terms.end(),
                           [&](const Term& t) { return t.exponent == pivot_exponent; });
  if (!found) throw PreconditionError("pivot is not an exponent of the signomial");
  std::vector<Term> raw;
  raw.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.exponent == pivot_exponent) continue;
    double shifted = t.exponent - pivot_exponent;
    raw.push_back({t.coefficient * shifted, shifted - 1.0});
  }
  return normalize(raw);
}

int sign_variations(const Signomial& p) {
  int count = 0;
  auto terms = p.terms();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if ((terms[i - 1].coefficient > 0) != (terms[i].coefficient > 0)) ++count;
  }
  return count;
}

Sign limit_sign(const Signomial& p, Endpoint endpoint) {
  if (p.empty()) return Sign::Zero;
  const Term& lead = endpoint == Endpoint::ZeroPlus ? p.terms().front() : p.terms().back();
  return sign_of(lead.coefficient);
}

double laguerre_pivot(const Signomial& p) {
  auto terms = p.terms();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if ((terms[i].coefficient > 0) != (terms[0].coefficient > 0)) return terms[i].exponent;
  }
  throw PreconditionError("signomial has no sign variation");
}

std::vector<Signomial> derivative_chain(const Signomial& p) {
  std::vector<Signomial> chain{p};
  while (sign_variations(chain.back()) > 0) {
    const Signomial& last = chain.back();
    chain.push_back(shift_and_differentiate(last, laguerre_pivot(last)));
  }
  return chain;
}

namespace {

// The dominant term at x neither underflows nor overflows.
bool representable(const Term& lead, double x) {
  double v = std::abs(lead.coefficient) * std::pow(x, lead.exponent);
  return std::isfinite(v) && v >= std::numeric_limits<double>::min();
}

}  // namespace

std::optional<double> dominance_point(const Signomial& p, Endpoint endpoint) {
  auto terms = p.terms();
  if (terms.size() <= 1) return 1.0;
  const double others = static_cast<double>(terms.size() - 1);
  if (endpoint == Endpoint::ZeroPlus) {
    // |a_j| x^(e_j - e_0) < |a_0| / (2 (n-1)) for every j > 0.
    const Term& lead = terms.front();
    double x = kInfinity;
    for (std::size_t j = 1; j < terms.size(); ++j) {
      double gap = terms[j].exponent - lead.exponent;
      double ratio = std::abs(lead.coefficient) / (2.0 * others * std::abs(terms[j].coefficient));
      x = std::min(x, std::pow(ratio, 1.0 / gap));
    }
    x *= 0.5;
    if (!(x >= std::numeric_limits<double>::min()) || !representable(lead, x)) return std::nullopt;
    return x;
  }
  const Term& lead = terms.back();
  double x = 0.0;
  for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
    double gap = lead.exponent - terms[j].exponent;
    double ratio = 2.0 * others * std::abs(terms[j].coefficient) / std::abs(lead.coefficient);
    x = std::max(x, std::pow(ratio, 1.0 / gap));
  }
  x = std::max(2.0 * x, std::numeric_limits<double>::min());
  if (!std::isfinite(x) || !representable(lead, x)) return std::nullopt;
  return x;
}

namespace {

// Zeros of chain[k] on (lo, hi). The zeros of chain[k + 1] are the critical
// points of x^-pivot chain[k](x), so each gap between them is monotone.
std::vector<detail::PieceRoot> isolate_link(const std::vector<Signomial>& chain, std::size_t k,
                                            double lo, double hi, double tol) {
  if (k + 1 >= chain.size()) return {};
  const Signomial& p = chain[k];
  std::vector<double> breakpoints;
  for (const auto& r : isolate_link(chain, k + 1, lo, hi, tol)) breakpoints.push_back(r.value);

  auto f = [&p](double x) { return evaluate_with_magnitude(p, x); };
  Sign sign_lo = lo == 0.0 ? limit_sign(p, Endpoint::ZeroPlus) : f(lo).certified_sign();
  Sign sign_hi = std::isinf(hi) ? limit_sign(p, Endpoint::Infinity) : f(hi).certified_sign();

  auto low_point = [&](double start, bool artificial, Sign want) {
    if (auto x = dominance_point(p, Endpoint::ZeroPlus); x && (artificial || *x < start)) {
      return *x;
    }
    if (auto x = detail::ladder_down(f, start, want, artificial)) return *x;
    throw ToleranceError("no certified sign near 0+");
  };
  auto high_point = [&](double start, Sign want) {
    if (auto x = dominance_point(p, Endpoint::Infinity); x && *x > start) return *x;
    if (auto x = detail::ladder_up(f, start, want, false)) return *x;
    throw ToleranceError("no certified sign near infinity");
  };
  return detail::roots_on_monotone_pieces(f, lo, hi, sign_lo, sign_hi, breakpoints, tol,
                                          low_point, high_point);
}

}  // namespace

Isolation count_and_isolate(const Signomial& p, double lo, double hi, double tol) {
  if (!(lo >= 0.0) || !(lo < hi) || std::isnan(hi)) {
    throw DomainError("interval must satisfy 0 <= lo < hi");
  }
  tol = detail::clamp_tolerance(tol);
  if (p.empty()) return {RootCount::identically_zero(), {}};

  const std::vector<Signomial> chain = derivative_chain(p);
  Isolation out;
  for (const auto& r : isolate_link(chain, 0, lo, hi, tol)) {
    bool degenerate = r.at_breakpoint;
    if (!degenerate) {
      Evaluation q = evaluate_with_magnitude(chain[1], r.value);
      degenerate = std::abs(q.value) < kDegeneracyThreshold * q.magnitude;
    }
    out.roots.push_back({r.lo, r.hi, r.value, degenerate});
  }
  out.count = RootCount::finite(static_cast<int>(out.roots.size()));
  return out;
}

}  // namespace eulerconf
