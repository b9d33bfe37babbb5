#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mldeg/polytope/lattice.hpp"

namespace mldeg::hull {

inline long cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Convex hull of points in Z^2: counterclockwise vertices starting from the
/// lexicographically smallest, with collinear boundary points dropped. For
/// collinear input the two endpoints (or the single point) are returned.
inline std::vector<Point> polygon(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() == 2 && h[0] == h[1]) h.resize(1);
  return h;
}

/// Twice the signed area of a polygon given in order.
inline long twice_area(const std::vector<Point>& poly) {
  long s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s;
}

inline Point cross3(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline long det3(const Point& a, const Point& b, const Point& c) { return dot(a, cross3(b, c)); }

struct Facet3 {
  Point inner_normal;         // primitive
  long level;                 // min of <inner_normal, x> over the polytope
  std::vector<Point> points;  // vertices on the facet
};

struct Polyhedron3 {
  std::vector<Point> vertices;  // lexicographic order
  std::vector<Facet3> facets;   // sorted by inner normal
  long six_volume = 0;          // 6 * Euclidean volume
};

/// Incremental convex hull of a full-dimensional point set in Z^3. The
/// result merges coplanar triangles into facets and keeps only extreme
/// points as vertices.
inline Polyhedron3 polyhedron(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Initial tetrahedron.
  std::array<std::size_t, 4> seed{0, 0, 0, 0};
  bool found = false;
  for (std::size_t b = 1; b < pts.size() && !found; ++b)
    for (std::size_t c = b + 1; c < pts.size() && !found; ++c) {
      if (is_zero(cross3(pts[b] - pts[0], pts[c] - pts[0]))) continue;
      for (std::size_t e = c + 1; e < pts.size(); ++e)
        if (det3(pts[b] - pts[0], pts[c] - pts[0], pts[e] - pts[0]) != 0) {
          seed = {0, b, c, e};
          found = true;
          break;
        }
    }
  if (!found) throw Error(ErrorCode::NotFullDimensional, "point set is not full-dimensional in Z^3");

  using Tri = std::array<std::size_t, 3>;
  std::vector<Tri> tris;
  auto orient = [&](const Tri& t, const Point& p) {
    return det3(pts[t[1]] - pts[t[0]], pts[t[2]] - pts[t[0]], p - pts[t[0]]);
  };
  {
    auto [a, b, c, e] = seed;
    if (det3(pts[b] - pts[a], pts[c] - pts[a], pts[e] - pts[a]) > 0) std::swap(b, c);
    // Now e lies on the negative side of (a,b,c): outward orientation.
    tris = {{a, b, c}, {a, e, b}, {b, e, c}, {c, e, a}};
  }
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (p == seed[0] || p == seed[1] || p == seed[2] || p == seed[3]) continue;
    std::vector<char> visible(tris.size(), 0);
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (orient(tris[t], pts[p]) > 0) visible[t] = any = true;
    if (!any) continue;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (visible[t])
        for (int i = 0; i < 3; ++i) edges.insert({tris[t][i], tris[t][(i + 1) % 3]});
    std::vector<Tri> next;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (!visible[t]) next.push_back(tris[t]);
    for (const auto& [a, b] : edges)
      if (!edges.count({b, a})) next.push_back({a, b, p});
    tris = std::move(next);
  }

  Polyhedron3 out;
  std::map<Point, std::set<std::size_t>> by_normal;
  for (const auto& t : tris) {
    Point outward = primitive(cross3(pts[t[1]] - pts[t[0]], pts[t[2]] - pts[t[0]]));
    auto& s = by_normal[scaled(outward, -1)];
    s.insert(t.begin(), t.end());
    out.six_volume += det3(pts[t[0]], pts[t[1]], pts[t[2]]);
  }
  std::map<std::size_t, std::vector<Point>> incident;
  for (const auto& [normal, ids] : by_normal) {
    Facet3 f{normal, dot(normal, pts[*ids.begin()]), {}};
    for (auto id : ids) {
      f.points.push_back(pts[id]);
      incident[id].push_back(normal);
    }
    out.facets.push_back(std::move(f));
  }
  std::set<Point> extreme;
  for (const auto& [id, normals] : incident)
    if (rank(normals, 3) == 3) extreme.insert(pts[id]);
  out.vertices.assign(extreme.begin(), extreme.end());
  for (auto& f : out.facets) {
    std::vector<Point> keep;
    for (const auto& q : f.points)
      if (extreme.count(q)) keep.push_back(q);
    f.points = std::move(keep);
  }
  return out;
}

}  // namespace mldeg::hull
