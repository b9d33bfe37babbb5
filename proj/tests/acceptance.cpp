// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mldeg/arrangement/bruteforce.hpp"
#include "mldeg/formulas/dense.hpp"
#include "mldeg/formulas/toric.hpp"
#include "mldeg/oracle/oracle.hpp"
#include "support/models.hpp"

#ifndef MLDEG_CLI_PATH
#define MLDEG_CLI_PATH ""
#endif
#ifndef MLDEG_FIXTURE_DIR
#define MLDEG_FIXTURE_DIR ""
#endif

using namespace mldeg;
using models::bivariate;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(MLDEG_CLI_PATH) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return "";
  std::string out;
  std::array<char, 256> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe.get())) out += buf.data();
  return out;
}

std::string fixture(const std::string& name) { return std::string(MLDEG_FIXTURE_DIR) + "/" + name; }

Integer binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  Integer r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Twice the shoelace area of a convex polygon given in cyclic order.
long twice_area(const std::vector<Point>& v) {
  long s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s < 0 ? -s : s;
}

LatticePolytope random_polygon(std::mt19937_64& rng, long size, long shift) {
  while (true) {
    std::vector<Point> pts(3 + rng() % 3, Point(2));
    for (auto& p : pts) p = {static_cast<long>(rng() % (size + 1)), static_cast<long>(rng() % (size + 1))};
    auto p = convex_hull(pts);
    if (p.full_dimensional()) return p.translated({shift, shift});
  }
}

bool general_position(const Arrangement& a) {
  const std::size_t n = a.size(), d = a.dim();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<QVector> normals, rows;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        normals.push_back(a.hyperplanes()[i].normal);
        rows.push_back(a.augmented(i));
      }
    const std::size_t k = normals.size();
    if (k <= d && detail::rank_of(normals, d) < k) return false;
    if (k == d + 1 && detail::rank_of(rows, d + 1) < d + 1) return false;
  }
  return true;
}

Arrangement random_arrangement(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  while (true) {
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < n; ++i) {
      QVector normal(d);
      for (auto& x : normal) x = Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3));
      hs.push_back({normal, Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3))});
    }
    try {
      Arrangement a(d, hs);
      if (general_position(a)) return a;
    } catch (const Error&) {
    }
  }
}

std::vector<long> random_weights(std::mt19937_64& rng, std::size_t n, bool positive) {
  std::vector<long> u(n);
  for (auto& x : u) {
    do x = positive ? 1 + static_cast<long>(rng() % 40) : static_cast<long>(rng() % 61) - 30;
    while (x == 0);
  }
  return u;
}

Outcome series_numbers() {
  Outcome o;
  auto s = generic_series(2, {2, 2, 2, 2}, 4);
  o.require(s == std::vector<Integer>{1, 6, 25, 88, 280}, "series coefficients differ");
  if (std::string(MLDEG_CLI_PATH).size()) {
    auto out = run_cli("generic -d 2 -b 2,2,2,2 --series 4");
    o.require(out.find("series: 1, 6, 25, 88, 280\n") != std::string::npos, "CLI output: " + out);
  }
  return o;
}

Outcome rectangles() {
  Outcome o;
  o.require(rectangle_ml_degree({1, 1, 1, 1}, {1, 1, 1, 1}) == 13, "closed form");
  auto sq = convex_hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  o.require(toric_ml_degree(ToricModel{{sq, sq, sq, sq}, std::nullopt}).degree == 13, "toric formula");
  return o;
}

Outcome example_polygons() {
  Outcome o;
  ToricModel m{{convex_hull({{0, 0}, {1, 0}, {1, 1}, {2, 0}}), convex_hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}}),
                convex_hull({{0, 0}, {1, 1}, {1, 2}})},
               std::nullopt};
  auto r = toric_ml_degree(m);
  o.require(r.degree == 14, "degree " + r.degree.str());
  auto parts = planar_decomposition(m, r);
  o.require(parts == std::vector<Rational>{1, Rational(3, 2), Rational(1, 2), 15, -1, -4, 1}, "decomposition");
  if (std::string(MLDEG_CLI_PATH).size()) {
    auto out = run_cli("toric " + fixture("example_polygons.json") + " --explain");
    o.require(out.find("decomposition: 1 + 3/2 + 1/2 + 15 - 1 - 4 + 1 = 14") != std::string::npos, "CLI: " + out);
  }
  return o;
}

Outcome area_formula() {
  Outcome o;
  std::mt19937_64 rng(401);
  int tested = 0, skipped = 0;
  while (tested < 100) {
    std::size_t n = 1 + rng() % 3;
    ToricModel m;
    for (std::size_t i = 0; i < n; ++i) m.polytopes.push_back(random_polygon(rng, 3, 1 + static_cast<long>(rng() % 4)));
    auto sum = minkowski_sum(m.polytopes);
    const auto& v = sum.vertices();
    bool through_origin = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      through_origin = through_origin || a[0] * b[1] - a[1] * b[0] == 0;
    }
    // Positive translates can still have an edge line through the origin.
    if (through_origin) {
      ++skipped;
      continue;
    }
    long twice = twice_area(v);
    for (const auto& p : m.polytopes) twice += twice_area(p.vertices());
    auto r = toric_ml_degree(m);
    o.require(twice % 2 == 0 && r.degree == twice / 2, "instance " + std::to_string(tested));
    ++tested;
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(skipped) + " draws with an edge line through 0 redrawn";
  return o;
}

Outcome arrangements() {
  Outcome o;
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 1 + rng() % 3, n = 1 + rng() % 6;
    auto a = random_arrangement(rng, d, n);
    Integer expect = binom(static_cast<long>(n) - 1, static_cast<long>(d));
    o.require(bounded_regions(a) == expect, "Zaslavsky count, trial " + std::to_string(trial));
    o.require(Integer(bounded_regions_bruteforce(a)) == expect, "brute force, trial " + std::to_string(trial));
    o.require(generic_ml_degree(static_cast<int>(d), std::vector<long>(n, 1)) == expect,
              "generating function, trial " + std::to_string(trial));
  }
  return o;
}

Outcome oracle_vs_formula() {
  Outcome o;
  std::mt19937_64 rng(601);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 3;
    std::vector<MultiPoly> f;
    std::vector<long> b;
    for (std::size_t i = 0; i < n; ++i) {
      b.push_back(1 + static_cast<long>(rng() % 3));
      f.push_back(models::random_dense(rng, 2, static_cast<int>(b.back())));
    }
    auto rep = count_critical_d2(build_system(f, random_weights(rng, n, false)));
    Integer expect = generic_ml_degree(2, b);
    o.require(Integer(rep.complex_count) == expect && rep.certified,
              "trial " + std::to_string(trial) + ": " + std::to_string(rep.complex_count) + " vs " + expect.str());
  }
  return o;
}

Outcome four_curves() {
  Outcome o;
  auto f = models::four_curves();
  const std::vector<std::pair<std::vector<long>, int>> cases{
      {{2, 3, 5, 7}, 9}, {{1, 2, 3, -6}, 7}, {{2, 4, 1, -4}, 5}, {{2, -2, 3, -3}, 3}};
  std::string got;
  for (const auto& [u, want] : cases) {
    auto rep = count_critical_d2(build_system(f, u));
    got += (got.empty() ? "" : "/") + std::to_string(rep.complex_count);
    o.require(rep.complex_count == want && rep.certified, "");
  }
  o.detail = "counts " + got;
  return o;
}

Outcome independence() {
  Outcome o;
  const std::vector<long> u{3, 5, 7, 11};
  OracleOptions opt;
  auto rep = count_critical_d2(build_system(models::independence_model(), u), opt);
  o.require(rep.complex_count == 1 && rep.certified, "count " + std::to_string(rep.complex_count));
  if (rep.complex_count == 1) {
    const Rational total(3 + 5 + 7 + 11);
    const auto& p = rep.points[0].coords;
    o.require(abs(p[0].re - Rational(3 + 7) / total) <= opt.tol && abs(p[1].re - Rational(3 + 5) / total) <= opt.tol &&
                  abs(p[0].im) <= opt.tol && abs(p[1].im) <= opt.tol,
              "root away from the closed form");
  }
  return o;
}

Outcome nested_ellipses() {
  Outcome o;
  auto rep = count_critical_d2(build_system(models::nested_ellipses(), {3, 4}));
  o.require(rep.complex_count == 5 && rep.real_count == 5 && rep.certified, "counts");
  for (long n = 1; n <= 6; ++n)
    o.require(plane_curve_ml_degree(std::vector<long>(static_cast<std::size_t>(n), 2)) == 2 * n * n - 2 * n + 1,
              "closed form at n = " + std::to_string(n));
  return o;
}

// Special members of dense families: repeated factors, curves through the
// origin, curves with a common point, and the four curves with more weights.
Outcome semicontinuity() {
  Outcome o;
  std::mt19937_64 rng(1001);
  auto line = [&] {
    return bivariate({{static_cast<long>(rng() % 9) + 1, 1, 0}, {static_cast<long>(rng() % 9) - 4, 0, 1},
                      {static_cast<long>(rng() % 9) - 4, 0, 0}});
  };
  auto through_origin = [&](int deg) {
    MultiPoly p = models::random_dense(rng, 2, deg);
    p.add_term({0, 0}, -p.coeff({0, 0}));
    return p;
  };
  std::vector<std::pair<std::vector<MultiPoly>, std::vector<long>>> special;
  for (const auto& u : std::vector<std::vector<long>>{{1, 1, 1, 1}, {3, 1, 4, 1}, {5, 9, 2, -6}, {1, -2, 3, -4}})
    special.push_back({models::four_curves(), u});
  for (int k = 0; k < 5; ++k) {
    auto g = line(), h = models::random_dense(rng, 2, 1 + k % 2);
    special.push_back({{g * g, g * h, line()}, random_weights(rng, 3, true)});
  }
  for (int k = 0; k < 6; ++k)
    special.push_back({{through_origin(1 + k % 2), through_origin(2), through_origin(1 + k % 3)},
                       random_weights(rng, 3, k % 2 == 0)});
  for (int k = 0; k < 5; ++k) {
    // Three curves through (1, 1).
    std::vector<MultiPoly> f;
    for (int i = 0; i < 3; ++i) {
      MultiPoly p = models::random_dense(rng, 2, 1 + (i + k) % 2);
      std::vector<Rational> pt{Rational(1), Rational(1)};
      p.add_term({0, 0}, -p.evaluate<Rational>(pt));
      f.push_back(p);
    }
    special.push_back({f, random_weights(rng, 3, true)});
  }

  int idx = 0, equal = 0;
  std::string pairs;
  for (const auto& [f, u] : special) {
    ++idx;
    std::vector<long> b;
    for (const auto& p : f) b.push_back(p.total_degree());
    Integer generic = generic_ml_degree(2, b);
    try {
      auto v = semicontinuity_check(generic, f, u);
      o.require(v.pass, "model " + std::to_string(idx) + ": " + std::to_string(v.special_count) + " > " +
                            generic.str());
      equal += Integer(v.special_count) == generic ? 1 : 0;
      pairs += (pairs.empty() ? "" : " ") + std::to_string(v.special_count) + "<=" + generic.str();
    } catch (const Error& e) {
      o.require(false, "model " + std::to_string(idx) + ": " + e.what());
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(special.size()) + " models, " + std::to_string(equal) +
              " at the generic value (" + pairs + ")";
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(1101);
  std::size_t mv = 0, self = 0, delres = 0, parity = 0, shear = 0;

  for (int t = 0; t < 100; ++t) {
    auto p = random_polygon(rng, 3, 0), q = random_polygon(rng, 3, 0), r = random_polygon(rng, 2, 0);
    std::vector<LatticePolytope> pq{p, q}, qp{q, p}, rq{r, q}, prq{minkowski_sum(p, r), q}, pp{p, p};
    bool ok = mixed_volume(pq) == mixed_volume(qp) && mixed_volume(prq) == mixed_volume(pq) + mixed_volume(rq);
    o.require(ok, "mixed volume symmetry or additivity");
    mv += ok;
    bool twice = mixed_volume(pp) == Rational(twice_area(p.vertices()));
    o.require(twice, "V(P,P) against the shoelace area");
    self += twice;
  }

  for (int t = 0; t < 100; ++t) {
    std::size_t d = 1 + rng() % 3, n = 2 + rng() % 4;
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < n; ++i) {
      QVector normal(d);
      for (auto& x : normal) x = Rational(static_cast<long>(rng() % 5) - 2);
      hs.push_back({normal, Rational(static_cast<long>(rng() % 5) - 2)});
    }
    try {
      Arrangement a(d, hs);
      std::size_t k = rng() % a.size();
      bool ok = count_cells_bruteforce(a).regions ==
                count_cells_bruteforce(deletion(a, k)).regions + count_cells_bruteforce(restriction(a, k)).regions;
      o.require(ok, "deletion-restriction");
      delres += ok;
    } catch (const Error&) {
      --t;  // zero normal or repeated hyperplane
    }
  }

  // One-variable models check parity alone; planar ones also shear invariance.
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 3;
    std::vector<MultiPoly> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(models::random_dense(rng, 1, 1 + static_cast<int>(rng() % 4)));
    auto rep = count_critical_d1(build_system(f, random_weights(rng, n, false)));
    bool ok = rep.real_count && (rep.complex_count - *rep.real_count) % 2 == 0;
    o.require(ok, "parity in one variable");
    parity += ok;
  }
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 2;
    std::vector<MultiPoly> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(models::random_dense(rng, 2, 1 + static_cast<int>(rng() % 2)));
    auto sys = build_system(f, random_weights(rng, n, false));
    OracleOptions a, b;
    a.seed = 1 + 2 * static_cast<unsigned long>(t);
    b.seed = a.seed + 1;
    auto ra = count_critical_d2(sys, a), rb = count_critical_d2(sys, b);
    bool same = ra.complex_count == rb.complex_count && ra.real_count == rb.real_count;
    o.require(same, "shear invariance");
    shear += same;
    bool ok = ra.real_count && (ra.complex_count - *ra.real_count) % 2 == 0;
    o.require(ok, "parity in two variables");
    parity += ok;
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(mv) + " mixed-volume, " + std::to_string(self) +
              " V(P,P), " + std::to_string(delres) + " deletion-restriction, " + std::to_string(parity) +
              " parity, " + std::to_string(shear) + " shear cases passed";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "series numbers 1, 6, 25, 88, 280", 1, series_numbers},
      {2, "four unit squares give 13", 1, rectangles},
      {3, "three polygons give 14 with the planar decomposition", 1, example_polygons},
      {4, "area formula on 100 translated planar instances", 30, area_formula},
      {5, "100 generic arrangements: three-way agreement", 60, arrangements},
      {6, "oracle equals the generating function on 50 generic planar models", 600, oracle_vs_formula},
      {7, "four curves through the origin: 9 / 7 / 5 / 3", 300, four_curves},
      {8, "independence model: one critical point at the closed form", 10, independence},
      {9, "two nested ellipses: 5 critical points, all real", 60, nested_ellipses},
      {10, "20 special models stay at or below the generic value", 600, semicontinuity},
      {11, "property suites", 300, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      out.pass = false;
      out.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (out.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << secs << " s]";
    if (!out.detail.empty()) line << " " << out.detail;
    std::cout << line.str() << std::endl;
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
