#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mldeg/io/json.hpp"
#include "mldeg/io/model.hpp"
#include "mldeg/mldeg.hpp"

#ifndef MLDEG_FIXTURE_DIR
#define MLDEG_FIXTURE_DIR "tests/fixtures"
#endif

using namespace mldeg;
using io::Json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kHypothesis = 3, kDisagree = 4, kPrecision = 5 };

struct Globals {
  bool json = false;
  unsigned precision = 256;
  std::string tol = "2^-40";
  unsigned long seed = 20240601;
  bool explain = false;
  bool crosscheck = false;
};

struct Output {
  std::ostream& out;
  const Globals& g;
  Json doc = Json::object();
  std::ostringstream text{};

  int finish(int code) {
    if (g.json) out << doc.dump(2) << "\n";
    else out << text.str();
    return code;
  }
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ZeroPolynomial:
      return kParse;
    case ErrorCode::PrecisionExhausted:
      return kPrecision;
    default:
      return kHypothesis;
  }
}

/// "p/q", an integer, or "2^-k".
Rational parse_tolerance(const std::string& s) {
  if (s.rfind("2^-", 0) == 0) {
    Rational r = parse_rational(s.substr(3));
    if (denominator_of(r) != 1 || r < 1 || r > 4096) throw Error(ErrorCode::InvalidInput, "bad tolerance " + s);
    return Rational(Integer(1), Integer(1) << numerator_of(r).convert_to<unsigned>());
  }
  Rational t = parse_rational(s);
  if (t <= 0) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
  return t;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string signed_sum(const std::vector<Rational>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Rational& q = parts[i];
    if (i == 0) s += to_string(q);
    else s += (q < 0 ? " - " : " + ") + to_string(abs(q));
  }
  return s;
}

std::string point_text(const Point& p) {
  std::vector<std::string> xs;
  for (long x : p) xs.push_back(std::to_string(x));
  return "(" + join(xs, ",") + ")";
}

std::string poly_text(const ZPoly& p) {
  std::vector<std::string> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const Integer& c = p[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    std::string coeff = (abs(c) == 1 && k > 0) ? "" : abs(c).str();
    std::string sign = c < 0 ? "-" : "+";
    terms.push_back((terms.empty() ? (c < 0 ? "-" : "") : sign + " ") + coeff + mono);
  }
  return terms.empty() ? "0" : join(terms, " ");
}

int cmd_generic(Output& o, int d, const std::vector<long>& b, int series) {
  Integer deg = generic_ml_degree(d, b);
  o.doc["ml_degree"] = io::integer_json(deg);
  o.text << "ML degree: " << deg << "\n";
  if (series >= 0) {
    auto coeffs = generic_series(d, b, static_cast<std::size_t>(series));
    Json arr = Json::array();
    std::vector<std::string> s;
    for (const auto& c : coeffs) {
      arr.push_back(io::integer_json(c));
      s.push_back(c.str());
    }
    o.doc["series"] = arr;
    o.text << "series: " << join(s, ", ") << "\n";
  }
  if (o.g.explain) {
    std::vector<std::string> den;
    for (long x : b) den.push_back("(1-" + std::to_string(x) + "z)");
    std::string gf = "(1-z)^" + std::to_string(d) + " / (" + join(den, "") + ")";
    o.doc["generating_function"] = gf;
    o.text << "coefficient of z^" << d << " in " << gf << "\n";
  }
  return kOk;
}

int cmd_toric(Output& o, const std::string& path, bool fastpath) {
  auto spec = io::parse_model(read_json(path));
  auto model = io::toric_model(spec);
  if (fastpath) {
    Integer deg = toric_ml_degree_2d_fastpath(model);
    o.doc["ml_degree"] = io::integer_json(deg);
    o.doc["method"] = "area";
    o.text << "toric ML degree (area formula): " << deg << "\n";
    return kOk;
  }
  auto r = toric_ml_degree(model);
  const auto& s = r.support;
  o.doc["ml_degree"] = io::integer_json(r.degree);
  o.doc["upper_bound_only"] = r.upper_bound_only;
  o.doc["support"] = s.support;
  o.doc["nonsupport"] = s.nonsupport;
  o.doc["fan"] = io::fan_json(s.fan);
  o.text << "toric ML degree: " << r.degree << (r.upper_bound_only ? " (upper bound for these weights)" : "") << "\n";
  std::vector<std::string> rays;
  for (std::size_t j = 0; j < s.fan.rays.size(); ++j)
    rays.push_back(std::to_string(j) + ":" + point_text(s.fan.rays[j]));
  o.text << "fan rays: " << join(rays, " ") << "\n";
  std::vector<std::string> sup;
  for (auto j : s.support) sup.push_back(std::to_string(j));
  o.text << "support: {" << join(sup, ",") << "}\n";

  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back({{"rays", t.rays}, {"cone", t.cone}, {"value", io::rational_json(t.value)}});
  o.doc["terms"] = terms;
  if (o.g.explain) {
    for (const auto& t : r.terms) {
      std::vector<std::string> j;
      for (auto x : t.rays) j.push_back(std::to_string(x));
      o.text << "  J={" << join(j, ",") << "}: " << to_string(t.value) << "\n";
    }
    if (spec.d == 2) {
      auto parts = planar_decomposition(model, r);
      Json arr = Json::array();
      for (const auto& q : parts) arr.push_back(io::rational_json(q));
      o.doc["decomposition"] = arr;
      o.text << "decomposition: " << signed_sum(parts) << " = " << r.degree << "\n";
    }
  }
  if (o.g.crosscheck && spec.d == 2) {
    try {
      Integer fast = toric_ml_degree_2d_fastpath(model);
      bool agree = fast == r.degree;
      o.doc["crosscheck"] = {{"area", io::integer_json(fast)}, {"agree", agree}};
      o.text << "crosscheck (area formula): " << fast << (agree ? " agree" : " DISAGREE") << "\n";
      if (!agree && !r.upper_bound_only) return kDisagree;
    } catch (const Error& e) {
      o.doc["crosscheck"] = {{"skipped", std::string(to_string(e.code()))}};
      o.text << "crosscheck skipped: " << e.what() << "\n";
    }
  }
  return kOk;
}

int cmd_arrangement(Output& o, const std::string& path, const std::vector<long>& u, bool brute) {
  auto j = read_json(path);
  auto a = io::parse_arrangement(j);
  std::vector<long> weights = u;
  if (weights.empty() && j.contains("weights")) weights = io::detail::long_list(j.at("weights"), "weight");
  if (weights.empty()) weights.assign(a.size(), 1);
  auto lin = linear_ml_degree(a, weights);
  auto chi = characteristic_polynomial(build_poset(a));
  Integer bounded = bounded_regions(a), total = total_regions(a);
  o.doc["bounded_regions"] = io::integer_json(bounded);
  o.doc["regions"] = io::integer_json(total);
  Json cj = Json::array();
  for (const auto& c : chi.coefficients()) cj.push_back(io::integer_json(c));
  o.doc["characteristic_polynomial"] = cj;
  o.doc["ml_degree"] = io::integer_json(lin.degree);
  o.text << "bounded regions: " << bounded << "\nregions: " << total << "\ncharacteristic polynomial: "
         << poly_text(chi) << "\nlinear ML degree: " << lin.degree << "\n";
  try {
    Integer t = terao_degree(a);
    o.doc["terao_degree"] = io::integer_json(t);
    if (o.g.explain) o.text << "Terao degree: " << t << "\n";
  } catch (const Error&) {
    o.doc["terao_degree"] = nullptr;
  }
  if (brute) {
    auto cells = count_cells_bruteforce(a);
    bool agree = Integer(cells.bounded) == bounded && Integer(cells.regions) == total;
    o.doc["brute"] = {{"bounded_regions", cells.bounded}, {"regions", cells.regions}, {"agree", agree}};
    o.text << "brute force: bounded " << cells.bounded << ", regions " << cells.regions
           << (agree ? " agree" : " DISAGREE") << "\n";
    if (!agree) return kDisagree;
  }
  return kOk;
}

int cmd_oracle(Output& o, const std::string& path) {
  auto spec = io::parse_model(read_json(path));
  io::check_polynomials(spec);
  std::mt19937_64 rng(o.g.seed);
  const bool generic_coefficients = !spec.polynomials;
  auto f = generic_coefficients ? io::random_polynomials(spec, rng) : *spec.polynomials;
  auto u = spec.weights ? *spec.weights : io::random_weights(spec.size(), rng);
  OracleOptions opt;
  opt.precision_bits = o.g.precision;
  opt.ceiling_bits = std::max(opt.ceiling_bits, o.g.precision);
  opt.tol = parse_tolerance(o.g.tol);
  opt.seed = o.g.seed;
  auto rep = count_critical(build_system(f, u, spec.toric), opt);

  o.doc = io::report_json(rep, o.g.explain);
  o.doc["weights"] = u;
  o.text << "complex critical points: " << rep.complex_count << "\n";
  if (rep.real_count) o.text << "real critical points: " << *rep.real_count << "\n";
  o.text << "certified: " << (rep.certified ? "yes" : "no") << " at " << rep.precision_bits << " bits\n";
  o.text << "filtered extraneous: " << rep.filtered_extraneous << "\n";
  if (rep.distinct_only) o.text << "note: some critical point is not simple; distinct points counted\n";
  for (const auto& p : rep.points) {
    if (!p.real && !o.g.explain) continue;
    std::vector<std::string> xs;
    for (const auto& c : p.coords)
      xs.push_back(p.real ? io::decimal(c.re) : io::decimal(c.re) + (c.im < 0 ? " - " : " + ") +
                                                    io::decimal(abs(c.im)) + "i");
    o.text << "  " << (p.real ? "real" : "complex") << " (" << join(xs, ", ") << ")\n";
  }

  if (o.g.crosscheck) {
    Integer formula;
    bool exact = generic_coefficients;
    if (spec.toric) {
      auto r = toric_ml_degree(io::toric_model(spec));
      formula = r.degree;
      exact = exact && !r.upper_bound_only;
    } else {
      formula = generic_ml_degree(static_cast<int>(spec.d), spec.degrees);
    }
    bool ok = exact ? Integer(rep.complex_count) == formula : Integer(rep.complex_count) <= formula;
    o.doc["crosscheck"] = {{"formula", io::integer_json(formula)}, {"relation", exact ? "equal" : "at_most"},
                           {"agree", ok}};
    o.text << "crosscheck: formula " << formula << (exact ? ", expect equal: " : ", expect at most: ")
           << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) return kDisagree;
  }
  return kOk;
}

int cmd_viro(Output& o, const std::vector<long>& b) {
  Integer bound = viro_bound(b), deg = plane_curve_ml_degree(b);
  o.doc["viro_bound"] = io::integer_json(bound);
  o.doc["ml_degree"] = io::integer_json(deg);
  o.text << "Viro bound: " << bound << "\nplane-curve ML degree: " << deg << "\n";
  return kOk;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Every expected key must match; other output keys are ignored.
bool subset_match(const Json& expect, const Json& got, std::string& where) {
  if (expect.is_object()) {
    if (!got.is_object()) return false;
    for (auto it = expect.begin(); it != expect.end(); ++it) {
      if (!got.contains(it.key())) {
        where = it.key() + " missing";
        return false;
      }
      if (!subset_match(it.value(), got.at(it.key()), where)) {
        if (where.empty()) where = it.key();
        return false;
      }
    }
    return true;
  }
  return expect == got;
}

int all_golden(const std::string& dir, std::ostream& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(fs::path(dir) / "golden"))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  int failed = 0;
  for (const auto& file : files) {
    auto g = read_json(file.string());
    std::vector<std::string> args;
    for (const auto& a : g.at("args")) {
      std::string s = a.get<std::string>();
      if (s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0 && fs::path(s).is_relative())
        s = (fs::path(dir) / s).string();
      args.push_back(s);
    }
    args.push_back("--json");
    std::ostringstream got, errs;
    int code = run(args, got, errs);
    int want = g.value("exit", 0);
    std::string why;
    bool ok = code == want;
    if (!ok) why = "exit " + std::to_string(code) + ", expected " + std::to_string(want);
    if (ok && g.contains("expect")) {
      Json doc;
      try {
        doc = Json::parse(got.str());
      } catch (const Json::exception&) {
        ok = false;
        why = "output is not JSON";
      }
      if (ok && !subset_match(g.at("expect"), doc, why)) {
        ok = false;
        why = "mismatch at " + why;
      }
    }
    out << (ok ? "PASS " : "FAIL ") << file.stem().string() << (ok ? "" : ": " + why) << "\n";
    failed += ok ? 0 : 1;
  }
  out << files.size() - static_cast<std::size_t>(failed) << "/" << files.size() << " golden examples passed\n";
  return failed == 0 ? kOk : kDisagree;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum likelihood degrees of algebraic statistical models", "mldeg"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--precision", g.precision, "Starting precision in bits")->check(CLI::Range(64u, 4096u));
  app.add_option("--tol", g.tol, "Certification tolerance (p/q or 2^-k)");
  app.add_option("--seed", g.seed, "Seed for random shears, coefficients and weights");
  app.add_flag("--explain", g.explain, "Print per-term breakdowns");
  app.add_flag("--crosscheck", g.crosscheck, "Compare against an independent route");
  bool golden = false;
  std::string fixtures = MLDEG_FIXTURE_DIR;
  app.add_flag("--all-golden", golden, "Run every committed golden example");
  app.add_option("--fixtures", fixtures, "Fixture directory for --all-golden");

  int d = 0, series = -1;
  std::vector<long> b, u;
  std::string path;
  bool fastpath = false, brute = false;
  auto* generic = app.add_subcommand("generic", "Generic dense model: coefficient of the generating function");
  generic->add_option("-d", d, "Number of parameters")->required()->check(CLI::Range(1, 64));
  generic->add_option("-b", b, "Degrees")->required()->delimiter(',');
  generic->add_option("--series", series, "Print coefficients up to this order")->check(CLI::Range(0, 10000));
  auto* toric = app.add_subcommand("toric", "Toric model from Newton polytopes");
  toric->add_option("model", path, "Model JSON")->required();
  toric->add_flag("--fastpath", fastpath, "Use the planar area formula");
  auto* arrangement = app.add_subcommand("arrangement", "Linear model from a hyperplane arrangement");
  arrangement->add_option("arrangement", path, "Arrangement JSON")->required();
  arrangement->add_option("-u,--weights", u, "Weights")->delimiter(',');
  arrangement->add_flag("--brute", brute, "Cross-check by sign-vector enumeration");
  auto* oracle = app.add_subcommand("oracle", "Solve the critical equations numerically with certification");
  oracle->add_option("model", path, "Model JSON")->required();
  auto* viro = app.add_subcommand("viro", "Viro bound next to the plane-curve ML degree");
  viro->add_option("-b", b, "Degrees")->required()->delimiter(',');

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParse;
  }
  if (golden) return all_golden(fixtures, out);
  if (app.get_subcommands().empty()) {
    err << app.help();
    return kParse;
  }

  Output o{out, g};
  try {
    parse_tolerance(g.tol);
    if (generic->parsed()) return o.finish(cmd_generic(o, d, b, series));
    if (toric->parsed()) return o.finish(cmd_toric(o, path, fastpath));
    if (arrangement->parsed()) return o.finish(cmd_arrangement(o, path, u, brute));
    if (oracle->parsed()) return o.finish(cmd_oracle(o, path));
    return o.finish(cmd_viro(o, b));
  } catch (const Error& e) {
    int code = exit_code_for(e.code());
    if (g.json) out << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
    err << e.what() << "\n";
    return code;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}
