#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mldeg/polytope/fan.hpp"

using namespace mldeg;

namespace {

LatticePolytope poly(std::vector<Point> pts) { return convex_hull(pts); }

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t d, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> c(lo, hi);
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (auto& x : p) x = c(rng);
  return pts;
}

// Brute-force extreme point test in the plane: p is not a vertex iff it lies
// in a closed triangle or segment spanned by other points.
bool in_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
  long s1 = hull::cross2(a, b, p), s2 = hull::cross2(b, c, p), s3 = hull::cross2(c, a, p);
  bool has_neg = s1 < 0 || s2 < 0 || s3 < 0, has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  if (hull::cross2(a, b, c) == 0) {
    // degenerate triangle: test the three segments
    auto on_seg = [&](const Point& u, const Point& v) {
      return hull::cross2(u, v, p) == 0 && std::min(u[0], v[0]) <= p[0] && p[0] <= std::max(u[0], v[0]) &&
             std::min(u[1], v[1]) <= p[1] && p[1] <= std::max(u[1], v[1]);
    };
    return on_seg(a, b) || on_seg(b, c) || on_seg(a, c);
  }
  return !(has_neg && has_pos);
}

std::set<Point> brute_vertices_2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::set<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool inside = false;
    for (std::size_t a = 0; a < pts.size() && !inside; ++a)
      for (std::size_t b = 0; b < pts.size() && !inside; ++b)
        for (std::size_t c = 0; c < pts.size() && !inside; ++c) {
          if (a == i || b == i || c == i) continue;
          inside = in_triangle(pts[i], pts[a], pts[b], pts[c]);
        }
    if (!inside) out.insert(pts[i]);
  }
  return out;
}

// Brute-force facets in 3D: planes through three points with every point on
// one side. Volume by pyramids from the centroid over each facet polygon.
Rational brute_volume_3d(std::vector<Point> pts, std::set<Point>* vertices) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::set<Point> normals;
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        Point nrm = primitive(hull::cross3(pts[b] - pts[a], pts[c] - pts[a]));
        if (is_zero(nrm)) continue;
        long lvl = dot(nrm, pts[a]);
        bool ge = true, le = true;
        for (const auto& q : pts) {
          ge = ge && dot(nrm, q) >= lvl;
          le = le && dot(nrm, q) <= lvl;
        }
        if (ge) normals.insert(nrm);
        if (le) normals.insert(scaled(nrm, -1));
      }
  // centroid scaled by n to stay integral
  Point c(3, 0);
  for (const auto& q : pts) c = c + q;
  Rational vol = 0;
  for (const auto& nrm : normals) {
    long lvl = dot(nrm, pts[0]);
    for (const auto& q : pts) lvl = std::min(lvl, dot(nrm, q));
    std::vector<Point> on;
    for (const auto& q : pts)
      if (dot(nrm, q) == lvl) on.push_back(q);
    // project facet to the coordinate plane where the normal is largest
    std::size_t drop = 0;
    for (std::size_t k = 1; k < 3; ++k)
      if (std::abs(nrm[k]) > std::abs(nrm[drop])) drop = k;
    std::vector<Point> proj;
    for (const auto& q : on) {
      Point r;
      for (std::size_t k = 0; k < 3; ++k)
        if (k != drop) r.push_back(q[k]);
      proj.push_back(r);
    }
    Rational projected_area(std::abs(hull::twice_area(hull::polygon(proj))), 2);
    // true area * |nrm| = projected area * |nrm| / |nrm_drop| ; height*|nrm| = <nrm, c/n> - lvl
    Rational height_times_norm = Rational(dot(nrm, c), static_cast<long>(n)) - lvl;
    vol += projected_area / std::abs(nrm[drop]) * height_times_norm / 3;
  }
  if (vertices) {
    vertices->clear();
    for (const auto& q : pts) {
      std::vector<Point> inc;
      for (const auto& nrm : normals) {
        long lvl = dot(nrm, pts[0]);
        for (const auto& r : pts) lvl = std::min(lvl, dot(nrm, r));
        if (dot(nrm, q) == lvl) inc.push_back(nrm);
      }
      if (rank(inc, 3) == 3) vertices->insert(q);
    }
  }
  return vol;
}

long minor_gcd(const std::vector<Point>& basis, std::size_t d) {
  // gcd of maximal minors for a k x d basis, k <= d <= 3
  const std::size_t k = basis.size();
  long g = 0;
  std::vector<std::size_t> cols(d);
  for (std::size_t i = 0; i < d; ++i) cols[i] = i;
  std::vector<bool> pick(d, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < d; ++i)
      if (pick[i]) c.push_back(i);
    long det = 0;
    if (k == 1)
      det = basis[0][c[0]];
    else if (k == 2)
      det = basis[0][c[0]] * basis[1][c[1]] - basis[0][c[1]] * basis[1][c[0]];
    else if (k == 3)
      det = hull::det3({basis[0][c[0]], basis[0][c[1]], basis[0][c[2]]},
                       {basis[1][c[0]], basis[1][c[1]], basis[1][c[2]]},
                       {basis[2][c[0]], basis[2][c[1]], basis[2][c[2]]});
    g = std::gcd(g, det);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

}  // namespace

TEST(Lattice, KernelIsSaturated) {
  auto k = integer_kernel({{2, 4}}, 2);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(dot(Point{2, 4}, k[0]), 0);
  EXPECT_EQ(std::abs(minor_gcd(k, 2)), 1);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 1 + rng() % 3, m = rng() % 3;
    auto rows = random_points(rng, d, m, -6, 6);
    auto ker = integer_kernel(rows, d);
    for (const auto& v : ker)
      for (const auto& r : rows) EXPECT_EQ(dot(r, v), 0);
    if (!ker.empty()) {
      EXPECT_EQ(std::abs(minor_gcd(ker, d)), 1);
    }
    auto span = saturated_span(rows, d);
    EXPECT_EQ(span.size() + ker.size(), d);
  }
}

TEST(Hull, SpecExamples) {
  auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_EQ(sq.vertices(), (std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  auto seg = poly({{0, 0}, {2, 0}, {1, 0}});
  EXPECT_EQ(seg.affine_dim(), 1u);
  EXPECT_EQ(seg.vertices(), (std::vector<Point>{{0, 0}, {2, 0}}));
  auto p1 = poly({{0, 0}, {1, 0}, {1, 1}, {2, 0}});
  EXPECT_EQ(p1.vertices(), (std::vector<Point>{{0, 0}, {2, 0}, {1, 1}}));
  EXPECT_EQ(poly({{3, 3}}).affine_dim(), 0u);
  EXPECT_THROW(poly({{0, 0, 0, 0}}), Error);
  EXPECT_THROW(poly({}), Error);
}

TEST(Hull, PlanarMatchesBruteForce) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto pts = random_points(rng, 2, 1 + rng() % 9, -4, 4);
    auto p = convex_hull(pts);
    std::set<Point> got(p.vertices().begin(), p.vertices().end());
    EXPECT_EQ(got, brute_vertices_2d(pts));
    if (p.affine_dim() == 2) {
      EXPECT_GT(hull::twice_area(p.vertices()), 0);
    }
  }
}

TEST(Hull, SpatialMatchesBruteForce) {
  std::mt19937_64 rng(29);
  int full = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto pts = random_points(rng, 3, 4 + rng() % 8, -3, 3);
    auto p = convex_hull(pts);
    if (p.affine_dim() < 3) continue;
    ++full;
    std::set<Point> brute;
    Rational vol = brute_volume_3d(pts, &brute);
    std::set<Point> got(p.vertices().begin(), p.vertices().end());
    EXPECT_EQ(got, brute);
    EXPECT_EQ(lattice_volume(p), vol);
  }
  EXPECT_GT(full, 100);
}

TEST(Hull, CoplanarAndCollinearIn3d) {
  auto tri = poly({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {1, 1, 0}, {1, 0, 0}});
  EXPECT_EQ(tri.affine_dim(), 2u);
  EXPECT_EQ(tri.vertices().size(), 3u);
  EXPECT_EQ(lattice_volume(tri), Rational(2));
  auto seg = poly({{0, 0, 0}, {2, 2, 2}, {1, 1, 1}});
  EXPECT_EQ(seg.affine_dim(), 1u);
  EXPECT_EQ(lattice_volume(seg), Rational(2));
  auto cube = poly({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {2, 2, 0}, {0, 0, 2}, {2, 0, 2}, {0, 2, 2}, {2, 2, 2}, {1, 1, 1},
                    {1, 0, 0}, {1, 1, 0}});
  EXPECT_EQ(cube.vertices().size(), 8u);
  EXPECT_EQ(lattice_volume(cube), Rational(8));
}

TEST(Minkowski, SpecExamples) {
  auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(minkowski_sum(sq, poly({{2, 3}})), poly({{2, 3}, {3, 3}, {2, 4}, {3, 4}}));
  auto pent = minkowski_sum(sq, tri);
  EXPECT_EQ(pent.vertices(), (std::vector<Point>{{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(lattice_volume(pent), Rational(7, 2));
  EXPECT_THROW(minkowski_sum(sq, poly({{0, 0, 0}})), Error);
}

TEST(Volume, SpecExamples) {
  EXPECT_EQ(lattice_volume(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), Rational(1));
  EXPECT_EQ(lattice_volume(poly({{0, 0}, {1, 0}, {0, 1}})), Rational(1, 2));
  EXPECT_EQ(lattice_volume(poly({{4, 4}})), Rational(0));
  // Lattice length, not Euclidean length, for a slanted segment.
  EXPECT_EQ(lattice_volume(poly({{0, 0}, {3, 6}})), Rational(3));
  // A unimodular triangle inside a plane of Z^3.
  EXPECT_EQ(lattice_volume(poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), Rational(1, 2));
}

TEST(MixedVolume, SpecExamples) {
  auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  std::vector<LatticePolytope> qq{sq, sq}, qt{sq, tri};
  EXPECT_EQ(mixed_volume(qq), Rational(2));
  EXPECT_EQ(mixed_volume(qt), Rational(2));
  EXPECT_EQ(mixed_volume(std::span<const LatticePolytope>{}), Rational(1));
  std::vector<LatticePolytope> simplex{poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})};
  simplex.push_back(simplex[0]);
  simplex.push_back(simplex[0]);
  EXPECT_EQ(mixed_volume(simplex), Rational(1));
  // Two planar segments in Z^3 span a rank-2 lattice.
  std::vector<LatticePolytope> segs{poly({{0, 0, 5}, {1, 0, 5}}), poly({{0, 0, 1}, {0, 2, 1}})};
  EXPECT_EQ(mixed_volume(segs), Rational(2));
  std::vector<LatticePolytope> too_big{sq};
  EXPECT_THROW(mixed_volume(too_big), Error);
}

TEST(MixedVolume, SymmetryMultilinearityAndDiagonal) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = poly(random_points(rng, 2, 1 + rng() % 5, 0, 4));
    auto q = poly(random_points(rng, 2, 1 + rng() % 5, 0, 4));
    auto r = poly(random_points(rng, 2, 1 + rng() % 5, 0, 4));
    std::vector<LatticePolytope> pq{p, q}, qp{q, p}, pp{p, p}, rq{r, q}, prq{minkowski_sum(p, r), q};
    EXPECT_EQ(mixed_volume(pq), mixed_volume(qp));
    EXPECT_EQ(mixed_volume(prq), mixed_volume(pq) + mixed_volume(rq));
    if (p.full_dimensional()) {
      EXPECT_EQ(mixed_volume(pp), 2 * lattice_volume(p));
    }
    std::vector<LatticePolytope> qq{q, q};
    // area(P+Q) = V(P,P)/2 + V(Q,Q)/2 + V(P,Q)
    auto s = minkowski_sum(p, q);
    Rational area_sum = s.full_dimensional() ? lattice_volume(s) : Rational(0);
    EXPECT_EQ(area_sum, mixed_volume(pp) / 2 + mixed_volume(qq) / 2 + mixed_volume(pq));
  }
  for (int trial = 0; trial < 30; ++trial) {
    auto p = poly(random_points(rng, 3, 4 + rng() % 4, 0, 3));
    if (!p.full_dimensional()) continue;
    std::vector<LatticePolytope> ppp{p, p, p};
    EXPECT_EQ(mixed_volume(ppp), 6 * lattice_volume(p));
  }
}

TEST(Face, SpecExamples) {
  auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(face(sq, {0, 1}), poly({{0, 0}, {1, 0}}));
  EXPECT_EQ(face(sq, {1, 1}), poly({{0, 0}}));
  EXPECT_EQ(face(sq, {0, 0}), sq);
  auto p2 = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}});
  EXPECT_EQ(face(p2, {-1, -1}), poly({{2, 0}, {1, 1}}));
}

TEST(Face, ContainedAndLevel) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 2 + rng() % 2;
    auto p = poly(random_points(rng, d, 2 + rng() % 6, -3, 3));
    auto v = random_points(rng, d, 1, -2, 2)[0];
    auto f = face(p, v);
    long lvl = dot(v, f.vertices().front());
    for (const auto& x : f.vertices()) {
      EXPECT_EQ(dot(v, x), lvl);
      EXPECT_NE(std::find(p.vertices().begin(), p.vertices().end(), x), p.vertices().end());
    }
    for (const auto& x : p.vertices()) EXPECT_GE(dot(v, x), lvl);
  }
}

TEST(Fan, SpecExamples) {
  auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto fan = normal_fan(sq);
  EXPECT_EQ(fan.rays, (std::vector<Point>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
  EXPECT_EQ(fan.maximal_cones().size(), 4u);
  auto simplex = poly({{0, 0}, {3, 0}, {0, 3}});
  EXPECT_EQ(normal_fan(simplex).rays, (std::vector<Point>{{1, 0}, {0, 1}, {-1, -1}}));
  EXPECT_THROW(normal_fan(poly({{0, 0}, {1, 1}})), Error);

  std::vector<LatticePolytope> ps{poly({{0, 0}, {1, 0}, {1, 1}, {2, 0}}), poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}}),
                                  poly({{0, 0}, {1, 1}, {1, 2}})};
  auto sum = minkowski_sum(ps);
  auto big = normal_fan(sum);
  EXPECT_EQ(big.rays.size(), 8u);
  EXPECT_EQ(big.rays.front(), (Point{1, 0}));
  EXPECT_EQ(lattice_volume(sum), Rational(15));

  auto a = facet_offsets(ps, big);
  EXPECT_EQ(a[0], (std::vector<long>{0, 0, 2, 2, 2, 1, 0, 0}));
  for (const auto& c : big.cones) EXPECT_TRUE(is_smooth(big, c));
}

TEST(Fan, SquareOffsetsAndRefinement) {
  auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto fan = normal_fan(sq);
  std::vector<LatticePolytope> one{sq};
  EXPECT_EQ(facet_offsets(one, fan)[0], (std::vector<long>{0, 0, 1, 1}));
  std::vector<LatticePolytope> tri{poly({{0, 0}, {2, 0}, {0, 1}})};
  EXPECT_THROW(facet_offsets(tri, fan), Error);
}

TEST(Fan, OffsetsReproducePolytopes) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 2 + rng() % 2;
    std::vector<LatticePolytope> ps;
    for (int i = 0; i < 2; ++i) ps.push_back(poly(random_points(rng, d, 1 + rng() % 5, -2, 3)));
    auto sum = minkowski_sum(ps);
    if (!sum.full_dimensional()) continue;
    auto fan = normal_fan(sum);
    auto a = facet_offsets(ps, fan);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (const auto& v : ps[i].vertices())
        for (std::size_t j = 0; j < fan.rays.size(); ++j) EXPECT_GE(dot(v, fan.rays[j]), -a[i][j]);
      // each inequality is tight somewhere, and every vertex is cut out by tight ones
      for (std::size_t j = 0; j < fan.rays.size(); ++j) {
        bool tight = false;
        for (const auto& v : ps[i].vertices()) tight = tight || dot(v, fan.rays[j]) == -a[i][j];
        EXPECT_TRUE(tight);
      }
      for (const auto& v : ps[i].vertices()) {
        std::vector<Point> tight_rays;
        for (std::size_t j = 0; j < fan.rays.size(); ++j)
          if (dot(v, fan.rays[j]) == -a[i][j]) tight_rays.push_back(fan.rays[j]);
        EXPECT_EQ(rank(tight_rays, d), d);
      }
    }
  }
}

TEST(Fan, SumFanIsCommonRefinement) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = poly(random_points(rng, 2, 3 + rng() % 4, -3, 3));
    auto q = poly(random_points(rng, 2, 3 + rng() % 4, -3, 3));
    if (!p.full_dimensional() || !q.full_dimensional()) continue;
    std::set<Point> expect;
    for (const auto& r : normal_fan(p).rays) expect.insert(r);
    for (const auto& r : normal_fan(q).rays) expect.insert(r);
    auto got = normal_fan(minkowski_sum(p, q)).rays;
    EXPECT_EQ(std::set<Point>(got.begin(), got.end()), expect);
  }
}

TEST(Fan, SpatialCones) {
  auto cube = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  auto fan = normal_fan(cube);
  EXPECT_EQ(fan.rays.size(), 6u);
  EXPECT_EQ(fan.maximal_cones().size(), 8u);
  std::size_t edges = 0;
  for (const auto& c : fan.cones) edges += c.dim == 2;
  EXPECT_EQ(edges, 12u);
  for (const auto& c : fan.cones) EXPECT_TRUE(is_smooth(fan, c));
  auto octa = poly({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  auto ofan = normal_fan(octa);
  EXPECT_EQ(ofan.rays.size(), 8u);
  for (const auto* c : ofan.maximal_cones()) {
    EXPECT_FALSE(c->simplicial);
    EXPECT_FALSE(is_smooth(ofan, *c));
  }
}
