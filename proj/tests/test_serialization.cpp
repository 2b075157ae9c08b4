#include "doctest.h"

#include <cmath>
#include <sstream>

#include "eulerconf/serialization.hpp"

using namespace eulerconf;

TEST_CASE("signomials round-trip") {
  Signomial p = normalize(std::vector<Term>{{1.5, -0.25}, {-3, 1}, {0.1, 2.75}});
  Json j = to_json(p);
  CHECK(j.dump() == "[[1.5,-0.25],[-3.0,1.0],[0.1,2.75]]");
  CHECK(signomial_from_json(Json::parse(j.dump())) == p);
  CHECK(signomial_from_json(Json::parse("[[1,1],[-1,1]]")).empty());
  CHECK(to_json(Signomial{}).dump() == "[]");

  BivariateSignomial f = normalize({{2, 0.5, 1}, {-1, 0, 0}});
  CHECK(bivariate_from_json(to_json(f)) == f);
}

TEST_CASE("doubles survive the text form exactly") {
  Signomial p = normalize(std::vector<Term>{{0.1 + 0.2, 1.0 / 3}, {-std::nextafter(1.0, 2.0), 1e-300}});
  CHECK(signomial_from_json(Json::parse(to_json(p).dump(2))) == p);
}

TEST_CASE("malformed terms") {
  for (const char* text : {"{}", "[1,2]", "[[1]]", "[[1,2,3]]", "[[\"a\",1]]", "[[1,null]]"}) {
    INFO(text);
    CHECK_THROWS_AS(signomial_from_json(Json::parse(text)), PreconditionError);
  }
  CHECK_THROWS_AS(bivariate_from_json(Json::parse("[[1,2]]")), PreconditionError);
}

TEST_CASE("counts") {
  CHECK(to_json(Count::finite(3)) == Json(3));
  CHECK(to_json(Count::infinite()) == Json("inf"));
  CHECK(count_from_json(Json(0)) == Count::finite(0));
  CHECK(count_from_json(Json("inf")).is_infinite());
  CHECK_THROWS_AS(count_from_json(Json(-1)), PreconditionError);
  CHECK_THROWS_AS(count_from_json(Json(1.5)), PreconditionError);
  CHECK_THROWS_AS(count_from_json(Json("infinity")), PreconditionError);
}

TEST_CASE("solutions round-trip") {
  ConfigurationSolution sol{Cell::Three, 0.7, {0, 1.7, 1}, true};
  ConfigurationSolution back = solution_from_json(Json::parse(to_json(sol).dump()));
  CHECK(back.cell == sol.cell);
  CHECK(back.s == sol.s);
  CHECK(back.positions == sol.positions);
  CHECK(back.degenerate);

  CHECK_THROWS_AS(solution_from_json(Json::parse(R"({"cell":4,"s":1,"positions":[0,1,2],"degenerate":false})")),
                  PreconditionError);
  CHECK_THROWS_AS(solution_from_json(Json::parse(R"({"cell":2,"s":1,"positions":[0,1]})")),
                  PreconditionError);
  CHECK_THROWS_AS(solution_from_json(Json::parse("[]")), PreconditionError);
}

TEST_CASE("solve report") {
  MassTriple m{1, 1, 1};
  Json r = solve_report(m, -2, count_all(m, -2));
  CHECK(r.at("total") == Json(3));
  CHECK(r.at("e2") == Json(1));
  CHECK(r.at("solutions").size() == 3);
  CHECK(r.at("degenerate_family").is_null());
  for (const Json& s : r.at("solutions")) {
    ConfigurationSolution sol = solution_from_json(s);
    CHECK(std::abs(eval_g(cell_mass_view(m, sol.cell), -2, sol.s)) < 1e-10);
  }

  Json cube = solve_report(m, 3, count_all(m, 3));
  CHECK(cube.at("total") == Json("inf"));
  CHECK(cube.at("degenerate_family") == Json("v"));
}

TEST_CASE("grid CSV") {
  GridResult g = grid_scan({-2, 0.1, 2}, {1, 2, 2});
  std::ostringstream out;
  write_grid_csv(out, g);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kGridCsvHeader);
  std::getline(in, line);
  CHECK(line == "-2,1,inf,inf,inf,inf,true");
  std::getline(in, line);
  CHECK(line.rfind("0.10000000000000001,1,", 0) == 0);
  int rows = 2;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  CHECK(format_real(1.0 / 3) == "0.33333333333333331");
}
