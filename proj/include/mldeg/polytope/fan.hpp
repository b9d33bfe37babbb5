#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mldeg/polytope/polytope.hpp"

namespace mldeg {

struct Cone {
  std::vector<std::size_t> rays;  // sorted ray indices
  std::size_t dim = 0;
  bool simplicial = true;
};

/// Complete fan given by primitive rays and its nonzero cones (the zero
/// cone is implicit). Every face of a listed cone is listed.
struct Fan {
  std::size_t dim = 0;
  std::vector<Point> rays;
  std::vector<Cone> cones;

  std::vector<const Cone*> maximal_cones() const {
    std::vector<const Cone*> out;
    for (const auto& c : cones)
      if (c.dim == dim) out.push_back(&c);
    return out;
  }

  /// Inclusion-minimal cone having all the given rays among its generators.
  /// Returns nullopt when no cone contains them all.
  std::optional<Cone> smallest_cone_containing(const std::vector<std::size_t>& ids) const {
    if (ids.empty()) return Cone{{}, 0, true};
    const Cone* best = nullptr;
    for (const auto& c : cones) {
      bool all = std::all_of(ids.begin(), ids.end(), [&](std::size_t j) {
        return std::binary_search(c.rays.begin(), c.rays.end(), j);
      });
      if (all && (!best || c.rays.size() < best->rays.size())) best = &c;
    }
    if (!best) return std::nullopt;
    return *best;
  }
};

/// A cone is smooth when it is simplicial and its rays extend to a basis of
/// Z^d, i.e. the gcd of the maximal minors of the ray matrix is 1.
inline bool is_smooth(const Fan& fan, const Cone& cone) {
  if (!cone.simplicial) return false;
  std::vector<Point> rays;
  for (auto j : cone.rays) rays.push_back(fan.rays[j]);
  const std::size_t m = rays.size(), d = fan.dim;
  if (m == 0) return true;
  // Lattice index of span(rays) ∩ Z^d over the rays' own lattice: compare
  // coordinates of a saturated basis.
  auto basis = saturated_span(rays, d);
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    auto c = coordinates_in(basis, rays[i]);
    for (std::size_t j = 0; j < m; ++j) a[i][j] = c[j];
  }
  // |det| of the ray coordinates in the saturated basis
  Rational det = 1;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t sel = col;
    while (sel < m && a[sel][col] == 0) ++sel;
    if (sel == m) return false;
    if (sel != col) std::swap(a[sel], a[col]);
    det *= a[col][col];
    for (std::size_t i = col + 1; i < m; ++i) {
      Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < m; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return abs(det) == 1;
}

namespace detail {

/// Counterclockwise angular order starting at direction (1,0).
inline bool angle_less(const Point& a, const Point& b) {
  auto half = [](const Point& p) { return (p[1] < 0 || (p[1] == 0 && p[0] < 0)) ? 1 : 0; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return a[0] * b[1] - a[1] * b[0] > 0;
}

}  // namespace detail

/// Inner normal fan of a full-dimensional polytope in dimension 1, 2 or 3.
/// In the plane the rays are listed counterclockwise from direction (1,0).
inline Fan normal_fan(const LatticePolytope& p) {
  const std::size_t d = p.ambient_dim();
  if (!p.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "normal fan of a lower-dimensional polytope");
  Fan fan;
  fan.dim = d;
  if (d == 1) {
    fan.rays = {{1}, {-1}};
    fan.cones = {{{0}, 1, true}, {{1}, 1, true}};
  } else if (d == 2) {
    const auto& v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      Point e = v[(i + 1) % v.size()] - v[i];
      fan.rays.push_back(primitive(Point{-e[1], e[0]}));
    }
    std::sort(fan.rays.begin(), fan.rays.end(), detail::angle_less);
    const std::size_t s = fan.rays.size();
    for (std::size_t j = 0; j < s; ++j) fan.cones.push_back({{j}, 1, true});
    for (std::size_t j = 0; j < s; ++j) {
      std::vector<std::size_t> pair{j, (j + 1) % s};
      std::sort(pair.begin(), pair.end());
      fan.cones.push_back({pair, 2, true});
    }
  } else if (d == 3) {
    auto poly = hull::polyhedron(p.vertices());
    for (const auto& f : poly.facets) fan.rays.push_back(f.inner_normal);
    const std::size_t s = fan.rays.size();
    for (std::size_t j = 0; j < s; ++j) fan.cones.push_back({{j}, 1, true});
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = a + 1; b < s; ++b) {
        std::size_t shared = 0;
        for (const auto& q : poly.facets[a].points)
          if (std::find(poly.facets[b].points.begin(), poly.facets[b].points.end(), q) != poly.facets[b].points.end())
            ++shared;
        if (shared >= 2) fan.cones.push_back({{a, b}, 2, true});
      }
    for (const auto& vtx : poly.vertices) {
      Cone c;
      for (std::size_t j = 0; j < s; ++j)
        if (dot(fan.rays[j], vtx) == poly.facets[j].level) c.rays.push_back(j);
      c.dim = 3;
      c.simplicial = c.rays.size() == 3;
      fan.cones.push_back(std::move(c));
    }
  } else {
    throw Error(ErrorCode::UnsupportedDimension, "normal fans are implemented for d <= 3");
  }
  return fan;
}

/// Facet offsets a[i][j] = -min_{x in P_i} <x, ray_j>. Throws FanNotRefining
/// when some maximal cone has no single vertex of P_i minimizing all its rays.
inline std::vector<std::vector<long>> facet_offsets(std::span<const LatticePolytope> ps, const Fan& fan) {
  std::vector<std::vector<long>> a;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& p = ps[i];
    if (p.ambient_dim() != fan.dim) throw Error(ErrorCode::DimensionMismatch, "polytope and fan dimensions differ");
    std::vector<long> row;
    for (const auto& ray : fan.rays) {
      long best = dot(ray, p.vertices().front());
      for (const auto& v : p.vertices()) best = std::min(best, dot(ray, v));
      row.push_back(-best);
    }
    for (const auto* cone : fan.maximal_cones()) {
      bool ok = std::any_of(p.vertices().begin(), p.vertices().end(), [&](const Point& v) {
        return std::all_of(cone->rays.begin(), cone->rays.end(),
                           [&](std::size_t j) { return dot(fan.rays[j], v) == -row[j]; });
      });
      if (!ok) throw Error(ErrorCode::FanNotRefining, "fan does not refine the normal fan of polytope " +
                                                          std::to_string(i + 1));
    }
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace mldeg
