#include "eulerconf/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerconf/classifier.hpp"
#include "eulerconf/euler.hpp"
#include "eulerconf/qps.hpp"
#include "eulerconf/serialization.hpp"
#include "eulerconf/signomial.hpp"
#include "eulerconf/verification.hpp"

namespace eulerconf::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw UsageError("not a decimal number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = text.find(sep, start);
    out.push_back(text.substr(start, at - start));
    if (at == std::string::npos) return out;
    start = at + 1;
  }
}

MassTriple parse_masses(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("masses are given as m1,m2,m3");
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

std::pair<double, double> parse_range(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("ranges are given as lo:hi, got '" + text + "'");
  return {parse_real(parts[0]), parse_real(parts[1])};
}

int parse_int(const std::string& text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("not an integer: '" + text + "'");
  }
  return v;
}

int workers_from_environment() {
  const char* value = std::getenv(kWorkersVariable);
  if (!value || !*value) return 1;
  int n = parse_int(value);
  if (n < 1) throw UsageError(std::string(kWorkersVariable) + " must be a positive integer");
  return n;
}

void check_tolerance(double tol) {
  if (!(tol > 0)) throw UsageError("tolerance must be positive");
}

struct Options {
  std::string masses;
  std::string b;
  double tol = kDefaultTolerance;

  std::string m2_range;
  std::string b_range;
  std::string resolution = "50x50";
  bool check = false;
  double margin = 0.05;
  std::string output;

  std::string terms;
  std::string interval = "0:inf";

  int n = 0;
  std::string degrees;
  int k = 0;

  std::string m2;
  int criterion = 0;
};

int cmd_solve(const Options& o, std::ostream& out) {
  check_tolerance(o.tol);
  MassTriple m = parse_masses(o.masses);
  double b = parse_real(o.b);
  out << solve_report(m, b, count_all(m, b, o.tol)).dump(2) << '\n';
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  double m2 = parse_real(o.m2);
  double b = parse_real(o.b);
  RegionClass r = classify_total(m2, b);
  Json j = {{"m2", m2},
            {"b", b},
            {"e1", to_json(r.e1)},
            {"e2", to_json(r.e2)},
            {"e3", to_json(r.e3())},
            {"total", to_json(r.total)},
            {"on_frontier", r.on_frontier},
            {"frontier", r.frontier ? Json(std::string(frontier_name(*r.frontier))) : Json()}};
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_grid(const Options& o, std::ostream& out, std::ostream& err) {
  check_tolerance(o.tol);
  auto [m2_lo, m2_hi] = parse_range(o.m2_range);
  auto [b_lo, b_hi] = parse_range(o.b_range);
  auto dims = split(o.resolution, 'x');
  if (dims.size() != 2) throw UsageError("resolution is given as NxM");
  GridRange m2{m2_lo, m2_hi, parse_int(dims[0])};
  GridRange b{b_lo, b_hi, parse_int(dims[1])};
  GridOptions options{o.check, o.margin, workers_from_environment(), o.tol};
  GridResult grid = grid_scan(m2, b, options);

  if (o.output.empty()) {
    write_grid_csv(out, grid);
  } else {
    std::ofstream file(o.output);
    if (!file) throw UsageError("cannot write " + o.output);
    write_grid_csv(file, grid);
  }
  if (o.check) {
    err << grid.checked << " points cross-checked, " << grid.mismatches.size()
        << " mismatches\n";
  }
  for (const Mismatch& m : grid.mismatches) {
    err << "mismatch m2=" << format_real(m.m2) << " b=" << format_real(m.b) << " classified "
        << m.classified.e1.to_string() << ',' << m.classified.e2.to_string() << ','
        << m.classified.e3().to_string();
    if (m.numeric) {
      err << " numeric " << m.numeric->e1.to_string() << ',' << m.numeric->e2.to_string() << ','
          << m.numeric->e3.to_string();
    }
    err << ": " << m.message << '\n';
  }
  return grid.mismatches.empty() ? kOk : kMismatch;
}

int cmd_signomial(const Options& o, std::ostream& out) {
  check_tolerance(o.tol);
  Json parsed;
  try {
    parsed = Json::parse(o.terms);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("terms are not valid JSON: ") + e.what());
  }
  Signomial p = signomial_from_json(parsed);
  auto [lo, hi] = parse_range(o.interval);
  Isolation iso = count_and_isolate(p, lo, hi, o.tol);

  Json roots = Json::array();
  for (const RootRecord& r : iso.roots) roots.push_back(to_json(r));
  const int variations = sign_variations(p);
  Json j = {{"terms", to_json(p)},
            {"sign_variations", variations},
            {"laguerre_bound", p.empty() ? Json() : Json(variations)},
            {"count", iso.count.is_identically_zero() ? Json("identically_zero")
                                                      : Json(iso.count.value())},
            {"roots", std::move(roots)}};
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_bounds_straight(const Options& o, std::ostream& out) {
  out << straight_bound(o.n) << '\n';
  return kOk;
}

int cmd_bounds_khovanskii(const Options& o, std::ostream& out) {
  auto d = split(o.degrees, ',');
  if (d.size() != 2) throw UsageError("degrees are given as d1,d2");
  out << khovanskii_bound(parse_int(d[0]), parse_int(d[1]), o.k) << '\n';
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  using verification::CriterionResult;
  int failed = 0, ran = 0;
  auto report = [&](const CriterionResult& r) {
    out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << "  " << r.name << ": "
        << r.detail << '\n'
        << std::flush;
    failed += !r.passed;
    ++ran;
  };
  if (o.criterion != 0) {
    report(verification::run_criterion(o.criterion));
  } else {
    verification::run_acceptance(verification::kDefaultSeed, report);
  }
  out << ran - failed << '/' << ran << " criteria passed\n";
  return failed == 0 ? kOk : kMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler configurations of three bodies, signomial root counting"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "count and locate the configurations of all cells");
  solve->add_option("-m,--masses", o.masses, "m1,m2,m3")->required();
  solve->add_option("-b,--exponent", o.b, "interaction exponent b")->required();
  solve->add_option("--tol", o.tol, "relative root width")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "closed-form counts for masses (1, m2, 1)");
  classify->add_option("--m2", o.m2, "middle mass")->required();
  classify->add_option("-b,--exponent", o.b, "interaction exponent b")->required();

  auto* grid = app.add_subcommand("grid", "scan the (m2, b) plane for masses (1, m2, 1)");
  grid->add_option("--m2", o.m2_range, "lo:hi")->required();
  grid->add_option("--b", o.b_range, "lo:hi")->required();
  grid->add_option("-n,--resolution", o.resolution, "points along m2 x points along b")
      ->capture_default_str();
  grid->add_flag("--check", o.check, "count numerically away from frontiers and compare");
  grid->add_option("--margin", o.margin, "minimum frontier distance for --check")
      ->capture_default_str();
  grid->add_option("--tol", o.tol, "relative root width")->capture_default_str();
  grid->add_option("-o,--output", o.output, "CSV file (default: standard output)");

  auto* sig = app.add_subcommand("signomial", "count and isolate positive zeros of a signomial");
  sig->add_option("terms", o.terms, "JSON array of [coefficient, exponent] pairs")->required();
  sig->add_option("--interval", o.interval, "lo:hi")->capture_default_str();
  sig->add_option("--tol", o.tol, "relative root width")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "root bounds for straight systems");
  bounds->require_subcommand(1);
  auto* straight = bounds->add_subcommand("straight", "2^n - 2");
  straight->add_option("-n", o.n, "number of monomials")->required();
  auto* khovanskii = bounds->add_subcommand("khovanskii", "d1 d2 (d1+d2+1)^k 2^(k(k-1)/2)");
  khovanskii->add_option("-d", o.degrees, "d1,d2")->required();
  khovanskii->add_option("-k", o.k, "number of exponentials")->required();

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", o.criterion, "run a single criterion (1-11)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*grid) return cmd_grid(o, out, err);
    if (*sig) return cmd_signomial(o, out);
    if (*straight) return cmd_bounds_straight(o, out);
    if (*khovanskii) return cmd_bounds_khovanskii(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const ToleranceError& e) {
    err << "tolerance failure: " << e.what() << '\n';
    return kTolerance;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace eulerconf::cli
