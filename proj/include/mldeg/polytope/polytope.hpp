#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mldeg/polytope/hull.hpp"
#include "mldeg/polytope/lattice.hpp"

namespace mldeg {

/// Affine frame of a point set: a base point and a saturated basis of the
/// lattice of integer vectors parallel to its affine span.
struct AffineLattice {
  Point origin;
  std::vector<Point> basis;
};

inline AffineLattice affine_lattice(const std::vector<Point>& pts) {
  const std::size_t d = pts.front().size();
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return {pts.front(), diffs.empty() ? std::vector<Point>{} : saturated_span(diffs, d)};
}

inline std::vector<long> coordinates_in(const std::vector<Point>& basis, const Point& v) {
  auto c = lattice_coordinates(basis, v);
  if (!c) throw Error(ErrorCode::SubspaceMismatch, "vector " + to_string(v) + " is outside the lattice");
  return *c;
}

inline std::vector<Point> diffs_from_first(const std::vector<Point>& pts) {
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return diffs;
}

/// Convex hull of a point set of dimension k <= 3 given in Z^k coordinates.
/// Returns the vertices (order: ccw for k = 2, lexicographic otherwise).
inline std::vector<Point> full_hull_vertices(const std::vector<Point>& pts, std::size_t k) {
  switch (k) {
    case 0:
      return {pts.front()};
    case 1: {
      auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
      return *lo == *hi ? std::vector<Point>{*lo} : std::vector<Point>{*lo, *hi};
    }
    case 2:
      return hull::polygon(pts);
    case 3:
      return hull::polyhedron(pts).vertices;
    default:
      throw Error(ErrorCode::UnsupportedDimension, "hulls are implemented up to dimension 3");
  }
}

/// Euclidean k-volume of conv(pts) for pts in Z^k, 0 when it is lower-dimensional.
inline Rational full_volume(const std::vector<Point>& pts, std::size_t k) {
  if (k == 0) return Rational(1);
  if (rank(diffs_from_first(pts), k) < k) return Rational(0);
  switch (k) {
    case 1: {
      auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
      return Rational((*hi)[0] - (*lo)[0]);
    }
    case 2:
      return Rational(hull::twice_area(hull::polygon(pts)), 2);
    case 3:
      return Rational(hull::polyhedron(pts).six_volume, 6);
    default:
      throw Error(ErrorCode::UnsupportedDimension, "volumes are implemented up to dimension 3");
  }
}

class LatticePolytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == ambient_dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

  LatticePolytope translated(const Point& q) const {
    LatticePolytope p = *this;
    for (auto& v : p.vertices_) v = v + q;
    return p;
  }

  /// Lexicographically smallest vertex.
  const Point& lex_min() const { return *std::min_element(vertices_.begin(), vertices_.end()); }

  friend LatticePolytope convex_hull(const std::vector<Point>& points);

 private:
  std::size_t ambient_dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<Point> vertices_;
};

inline LatticePolytope convex_hull(const std::vector<Point>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "convex hull of an empty point set");
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw Error(ErrorCode::DimensionMismatch, "points of different lengths");
  if (d > 3) throw Error(ErrorCode::UnsupportedDimension, "convex hulls are supported for d <= 3");

  LatticePolytope out;
  out.ambient_dim_ = d;
  auto frame = affine_lattice(points);
  const std::size_t k = frame.basis.size();
  out.affine_dim_ = k;
  if (k == d) {
    out.vertices_ = full_hull_vertices(points, d);
  } else {
    std::vector<Point> local;
    for (const auto& p : points) local.push_back(coordinates_in(frame.basis, p - frame.origin));
    for (const auto& c : full_hull_vertices(local, k)) {
      Point v = frame.origin;
      for (std::size_t j = 0; j < k; ++j) v = v + scaled(frame.basis[j], c[j]);
      out.vertices_.push_back(v);
    }
  }
  if (!(d == 2 && k == 2)) std::sort(out.vertices_.begin(), out.vertices_.end());
  return out;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "Minkowski sum of polytopes in different dimensions");
  std::vector<Point> sums;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  return convex_hull(sums);
}

inline LatticePolytope minkowski_sum(std::span<const LatticePolytope> ps) {
  if (ps.empty()) throw Error(ErrorCode::InvalidInput, "Minkowski sum of no polytopes");
  LatticePolytope acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = minkowski_sum(acc, ps[i]);
  return acc;
}

/// Euclidean volume relative to the lattice of the affine span (a unimodular
/// simplex has volume 1/k!). Points have volume 0.
inline Rational lattice_volume(const LatticePolytope& p) {
  if (p.affine_dim() == 0) return Rational(0);
  auto frame = affine_lattice(p.vertices());
  std::vector<Point> local;
  for (const auto& v : p.vertices()) local.push_back(coordinates_in(frame.basis, v - frame.origin));
  return full_volume(local, frame.basis.size());
}

/// Face minimizing <v, .>; v = 0 gives the polytope itself.
inline LatticePolytope face(const LatticePolytope& p, const Point& v) {
  if (v.size() != p.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "functional of wrong length");
  long best = dot(v, p.vertices().front());
  for (const auto& x : p.vertices()) best = std::min(best, dot(v, x));
  std::vector<Point> on;
  for (const auto& x : p.vertices())
    if (dot(v, x) == best) on.push_back(x);
  return convex_hull(on);
}

/// Mixed volume V(P_1,...,P_k) relative to a rank-k lattice L (given by a
/// basis): sum over nonempty S of (-1)^{k-|S|} vol_L(sum_{i in S} P_i), so
/// that V(P,...,P) = k! vol_L(P) and a unimodular simplex gives 1. Each P_i is
/// first translated by its lexicographically smallest vertex.
inline Rational mixed_volume(std::span<const LatticePolytope> ps, const std::vector<Point>& lattice_basis) {
  const std::size_t k = ps.size();
  if (k == 0) return Rational(1);
  if (lattice_basis.size() != k)
    throw Error(ErrorCode::SubspaceMismatch, "lattice rank " + std::to_string(lattice_basis.size()) +
                                                 " differs from the number of polytopes " + std::to_string(k));
  std::vector<std::vector<Point>> local(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Point base = ps[i].lex_min();
    for (const auto& v : ps[i].vertices()) local[i].push_back(coordinates_in(lattice_basis, v - base));
  }
  Rational total = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<Point> acc{Point(k, 0)};
    int size = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) continue;
      ++size;
      std::vector<Point> next;
      for (const auto& a : acc)
        for (const auto& b : local[i]) next.push_back(a + b);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (next.size() > 32 && rank(diffs_from_first(next), k) == k)
        next = full_hull_vertices(next, k);
      acc = std::move(next);
    }
    Rational vol = full_volume(acc, k);
    if ((k - static_cast<std::size_t>(size)) % 2 == 0)
      total += vol;
    else
      total -= vol;
  }
  return total;
}

/// Mixed volume in the lattice spanned by the translated polytopes
/// themselves. Returns 0 when that lattice has rank below k.
inline Rational mixed_volume(std::span<const LatticePolytope> ps) {
  const std::size_t k = ps.size();
  if (k == 0) return Rational(1);
  const std::size_t d = ps.front().ambient_dim();
  std::vector<Point> diffs;
  for (const auto& p : ps) {
    if (p.ambient_dim() != d) throw Error(ErrorCode::DimensionMismatch, "polytopes in different dimensions");
    for (const auto& v : p.vertices()) diffs.push_back(v - p.lex_min());
  }
  auto basis = saturated_span(diffs, d);
  if (basis.size() > k)
    throw Error(ErrorCode::SubspaceMismatch, "translated polytopes span a lattice of rank " +
                                                 std::to_string(basis.size()) + " > " + std::to_string(k));
  if (basis.size() < k) return Rational(0);
  return mixed_volume(ps, basis);
}

}  // namespace mldeg
