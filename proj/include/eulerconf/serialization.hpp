#pragma once

// JSON and CSV forms shared by the command-line tool.
//
//   signomial            [[coefficient, exponent], ...]
//   bivariate signomial  [[coefficient, x_exponent, y_exponent], ...]
//   solution             {"cell": 2, "s": ..., "positions": [x1, x2, x3], "degenerate": false}
//   count                integer, or the string "inf"
//
// Malformed input raises PreconditionError.

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "eulerconf/classifier.hpp"
#include "eulerconf/euler.hpp"
#include "eulerconf/qps.hpp"
#include "eulerconf/signomial.hpp"

namespace eulerconf {

using Json = nlohmann::json;

Json to_json(const Signomial& p);
Signomial signomial_from_json(const Json& j);

Json to_json(const BivariateSignomial& f);
BivariateSignomial bivariate_from_json(const Json& j);

Json to_json(const Count& c);
Count count_from_json(const Json& j);

Json to_json(const ConfigurationSolution& sol);
ConfigurationSolution solution_from_json(const Json& j);

Json to_json(const RootRecord& r);

/// {"e1", "e2", "e3", "total", "solutions", "degenerate_family"}; the family
/// is reported when any cell falls in one, else null.
Json solve_report(const MassTriple& m, double b, const CellCount& counts);

/// %.17g
std::string format_real(double v);

inline constexpr const char* kGridCsvHeader = "m2,b,e1,e2,e3,total,on_frontier";

/// Header and one row per grid point, in scan order.
void write_grid_csv(std::ostream& out, const GridResult& grid);

}  // namespace eulerconf
