#include "eulerconf/serialization.hpp"

#include <cstdio>
#include <vector>

namespace eulerconf {

namespace {

double real_at(const Json& j, std::size_t i) {
  if (!j.at(i).is_number()) throw PreconditionError("expected a number, got " + j.at(i).dump());
  return j.at(i).get<double>();
}

void require_tuples(const Json& j, std::size_t width) {
  if (!j.is_array()) throw PreconditionError("expected an array of terms");
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != width) {
      throw PreconditionError("each term must be an array of " + std::to_string(width) +
                              " numbers, got " + t.dump());
    }
  }
}

}  // namespace

Json to_json(const Signomial& p) {
  Json out = Json::array();
  for (const Term& t : p.terms()) out.push_back({t.coefficient, t.exponent});
  return out;
}

Signomial signomial_from_json(const Json& j) {
  require_tuples(j, 2);
  std::vector<Term> raw;
  for (const Json& t : j) raw.push_back({real_at(t, 0), real_at(t, 1)});
  return normalize(raw);
}

Json to_json(const BivariateSignomial& f) {
  Json out = Json::array();
  for (const BivariateTerm& t : f.terms()) {
    out.push_back({t.coefficient, t.x_exponent, t.y_exponent});
  }
  return out;
}

BivariateSignomial bivariate_from_json(const Json& j) {
  require_tuples(j, 3);
  std::vector<BivariateTerm> raw;
  for (const Json& t : j) raw.push_back({real_at(t, 0), real_at(t, 1), real_at(t, 2)});
  return normalize(raw);
}

Json to_json(const Count& c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

Count count_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Count::infinite();
  if (j.is_number_integer() && j.get<long long>() >= 0) return Count::finite(j.get<int>());
  throw PreconditionError("a count is a non-negative integer or \"inf\", got " + j.dump());
}

Json to_json(const ConfigurationSolution& sol) {
  return {{"cell", static_cast<int>(sol.cell)},
          {"s", sol.s},
          {"positions", sol.positions},
          {"degenerate", sol.degenerate}};
}

ConfigurationSolution solution_from_json(const Json& j) {
  try {
    ConfigurationSolution sol;
    int cell = j.at("cell").get<int>();
    if (cell < 1 || cell > 3) throw PreconditionError("cell must be 1, 2 or 3");
    sol.cell = static_cast<Cell>(cell);
    sol.s = j.at("s").get<double>();
    sol.positions = j.at("positions").get<std::array<double, 3>>();
    sol.degenerate = j.at("degenerate").get<bool>();
    return sol;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed solution: ") + e.what());
  }
}

Json to_json(const RootRecord& r) {
  return {{"value", r.value}, {"lo", r.lo}, {"hi", r.hi}, {"degenerate", r.degenerate}};
}

Json solve_report(const MassTriple& m, double b, const CellCount& counts) {
  Json solutions = Json::array();
  for (const ConfigurationSolution& sol : counts.solutions) solutions.push_back(to_json(sol));
  Json family = nullptr;
  for (Cell cell : kAllCells) {
    if (auto f = degenerate_family(cell_mass_view(m, cell), b)) {
      family = std::string(roman_label(*f));
      break;
    }
  }
  return {{"e1", to_json(counts.e1)},
          {"e2", to_json(counts.e2)},
          {"e3", to_json(counts.e3)},
          {"total", to_json(counts.total)},
          {"solutions", std::move(solutions)},
          {"degenerate_family", std::move(family)}};
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_csv(std::ostream& out, const GridResult& grid) {
  out << kGridCsvHeader << '\n';
  for (const GridPoint& p : grid.points) {
    const RegionClass& r = p.region;
    out << format_real(p.m2) << ',' << format_real(p.b) << ',' << r.e1.to_string() << ','
        << r.e2.to_string() << ',' << r.e3().to_string() << ',' << r.total.to_string() << ','
        << (r.on_frontier ? "true" : "false") << '\n';
  }
}

}  // namespace eulerconf
