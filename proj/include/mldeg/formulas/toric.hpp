#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mldeg/polytope/fan.hpp"

namespace mldeg {

/// Newton polytopes of n Laurent polynomials and their exponents u. Missing
/// weights stand for generic u, where only identically vanishing offset
/// combinations leave the support.
struct ToricModel {
  std::vector<LatticePolytope> polytopes;
  std::optional<std::vector<long>> weights;

  std::size_t dim() const { return polytopes.empty() ? 0 : polytopes.front().ambient_dim(); }
};

struct SupportData {
  Fan fan;
  std::vector<std::vector<long>> offsets;  // offsets[i][j] for polytope i, ray j
  std::vector<std::size_t> support;
  std::vector<std::size_t> nonsupport;
  // Rays dropped from the support only because the concrete weights cancel.
  std::vector<std::size_t> accidental;
};

/// One group of the alternating sum: the rays J, the smallest cone holding
/// them, and the signed sum of mixed volumes over index multisets.
struct ToricTerm {
  std::vector<std::size_t> rays;
  std::vector<std::size_t> cone;
  int sign = 1;
  Rational value;  // signed
};

struct ToricResult {
  Integer degree;
  SupportData support;
  std::vector<ToricTerm> terms;
  bool upper_bound_only = false;
};

inline void validate(const ToricModel& m) {
  if (m.polytopes.empty()) throw Error(ErrorCode::InvalidInput, "toric model without polytopes");
  const std::size_t d = m.dim();
  for (const auto& p : m.polytopes)
    if (p.ambient_dim() != d) throw Error(ErrorCode::DimensionMismatch, "polytopes in different dimensions");
  if (d > 3) throw Error(ErrorCode::UnsupportedDimension, "toric formula needs an explicit fan beyond d = 3");
  if (m.weights) {
    if (m.weights->size() != m.polytopes.size())
      throw Error(ErrorCode::DimensionMismatch, "weight count differs from polytope count");
    for (long u : *m.weights)
      if (u == 0) throw Error(ErrorCode::InvalidInput, "weights must be nonzero");
  }
}

inline SupportData support_data(const ToricModel& m) {
  validate(m);
  SupportData s;
  auto sum = minkowski_sum(m.polytopes);
  if (!sum.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "Minkowski sum is not full-dimensional");
  s.fan = normal_fan(sum);
  s.offsets = facet_offsets(m.polytopes, s.fan);
  for (std::size_t j = 0; j < s.fan.rays.size(); ++j) {
    bool some = false;
    long combo = 0;
    for (std::size_t i = 0; i < m.polytopes.size(); ++i) {
      some = some || s.offsets[i][j] != 0;
      if (m.weights) combo += (*m.weights)[i] * s.offsets[i][j];
    }
    bool in = m.weights ? combo != 0 : some;
    (in ? s.support : s.nonsupport).push_back(j);
    if (!in && some) s.accidental.push_back(j);
  }
  return s;
}

inline void check_smoothness(const SupportData& s) {
  for (const auto& cone : s.fan.cones) {
    if (is_smooth(s.fan, cone)) continue;
    bool touches = false;
    for (auto j : cone.rays)
      touches = touches || std::binary_search(s.support.begin(), s.support.end(), j);
    if (!touches) {
      std::string rays;
      for (auto j : cone.rays) rays += (rays.empty() ? "" : " ") + to_string(s.fan.rays[j]);
      throw Error(ErrorCode::SmoothnessHypothesisViolated, "singular cone outside the divisor support: " + rays);
    }
  }
}

namespace detail {

inline void multisets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                      std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    multisets(n, k, i, cur, out);
    cur.pop_back();
  }
}

inline void subsets(const std::vector<std::size_t>& pool, std::size_t k, std::size_t start,
                    std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    subsets(pool, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Mixed volume of the faces P_i^tau in the lattice orthogonal to the cone
/// tau; the empty index list gives 1.
inline Rational cone_mixed_volume(const std::vector<LatticePolytope>& ps, const std::vector<std::size_t>& indices,
                                  const Fan& fan, const std::vector<std::size_t>& cone) {
  const std::size_t d = fan.dim;
  Point v(d, 0);
  std::vector<Point> rays;
  for (auto j : cone) {
    v = v + fan.rays[j];
    rays.push_back(fan.rays[j]);
  }
  std::vector<LatticePolytope> faces;
  for (auto i : indices) faces.push_back(face(ps[i], v));
  return mixed_volume(faces, integer_kernel(rays, d));
}

/// Alternating sum over subsets J of nonsupport rays (|J| = c <= d) of
/// (-1)^c sum_{i_1 <= ... <= i_{d-c}} V(P_{i_1}, ..., P_{i_{d-c}}; tau_J).
inline ToricResult toric_ml_degree(const ToricModel& m) {
  ToricResult r;
  r.support = support_data(m);
  check_smoothness(r.support);
  const auto& s = r.support;
  const std::size_t d = m.dim(), n = m.polytopes.size();
  r.upper_bound_only = m.weights.has_value() && !s.accidental.empty();

  Rational total = 0;
  for (std::size_t c = 0; c <= std::min(d, s.nonsupport.size()); ++c) {
    std::vector<std::vector<std::size_t>> js;
    std::vector<std::size_t> cur;
    detail::subsets(s.nonsupport, c, 0, cur, js);
    for (const auto& j : js) {
      auto tau = s.fan.smallest_cone_containing(j);
      if (!tau) continue;
      const std::size_t codim = d - tau->dim, k = d - c;
      if (codim > k) continue;
      if (codim < k)
        throw Error(ErrorCode::UnsupportedCone, "cone of dimension " + std::to_string(tau->dim) + " holds " +
                                                    std::to_string(c) + " nonsupport rays");
      ToricTerm term{j, tau->rays, c % 2 == 0 ? 1 : -1, Rational(0)};
      std::vector<std::vector<std::size_t>> tuples;
      std::vector<std::size_t> idx;
      detail::multisets(n, k, 0, idx, tuples);
      for (const auto& t : tuples) term.value += cone_mixed_volume(m.polytopes, t, s.fan, tau->rays);
      term.value *= term.sign;
      total += term.value;
      r.terms.push_back(std::move(term));
    }
  }
  if (denominator_of(total) != 1) throw Error(ErrorCode::InvalidInput, "non-integral toric formula value");
  r.degree = numerator_of(total);
  return r;
}

/// Planar form of the alternating sum: the areas of the P_i, the area of
/// their sum, then one signed entry per nonempty J.
inline std::vector<Rational> planar_decomposition(const ToricModel& m, const ToricResult& r) {
  if (m.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "planar decomposition needs d = 2");
  std::vector<Rational> out;
  for (const auto& p : m.polytopes) out.push_back(p.full_dimensional() ? lattice_volume(p) : Rational(0));
  out.push_back(lattice_volume(minkowski_sum(m.polytopes)));
  for (const auto& t : r.terms)
    if (!t.rays.empty()) out.push_back(t.value);
  return out;
}

/// area(P) + sum_i area(P_i) when no edge line of P = sum P_i passes
/// through the origin.
inline Integer toric_ml_degree_2d_fastpath(const ToricModel& m) {
  validate(m);
  if (m.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "the area formula is planar");
  auto sum = minkowski_sum(m.polytopes);
  if (!sum.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "Minkowski sum is not full-dimensional");
  const auto& v = sum.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (hull::cross2(Point{0, 0}, v[i], v[(i + 1) % v.size()]) == 0)
      throw Error(ErrorCode::OriginOnEdgeLine, "the line through edge " + to_string(v[i]) + " " +
                                                   to_string(v[(i + 1) % v.size()]) + " passes through the origin");
  Rational total = lattice_volume(sum);
  for (const auto& p : m.polytopes)
    if (p.full_dimensional()) total += lattice_volume(p);
  if (denominator_of(total) != 1) throw Error(ErrorCode::InvalidInput, "non-integral area sum");
  return numerator_of(total);
}

}  // namespace mldeg
