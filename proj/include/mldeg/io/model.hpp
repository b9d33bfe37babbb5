#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "mldeg/formulas/dense.hpp"
#include "mldeg/formulas/toric.hpp"
#include "mldeg/io/json.hpp"

namespace mldeg::io {

namespace detail {

inline long draw_nonzero(std::mt19937_64& rng, long bound) {
  long v = 0;
  while (v == 0) v = static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound;
  return v;
}

}  // namespace detail

/// Lattice points of a polytope of dimension at most two.
inline std::vector<Point> lattice_points(const LatticePolytope& p) {
  const std::size_t d = p.ambient_dim();
  if (d > 2) throw Error(ErrorCode::UnsupportedDimension, "lattice point enumeration needs d <= 2");
  Point lo = p.vertices().front(), hi = lo;
  for (const auto& v : p.vertices())
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  std::vector<Point> out;
  auto inside = [&](const Point& q) {
    auto with = p.vertices();
    with.push_back(q);
    return convex_hull(with) == p;
  };
  if (d == 1) {
    for (long a = lo[0]; a <= hi[0]; ++a) out.push_back({a});
    return out;
  }
  for (long a = lo[0]; a <= hi[0]; ++a)
    for (long b = lo[1]; b <= hi[1]; ++b)
      if (inside({a, b})) out.push_back({a, b});
  return out;
}

/// Random integer coefficients in [-40, 40] \ {0} on every monomial of the
/// model's supports: all monomials up to the degree for dense models, all
/// lattice points of the polytope for toric ones.
inline std::vector<MultiPoly> random_polynomials(const ModelSpec& m, std::mt19937_64& rng) {
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    MultiPoly p(m.d);
    if (m.toric) {
      for (const auto& q : lattice_points(m.polytopes[i])) {
        Exponent e(q.begin(), q.end());
        p.add_term(e, Rational(detail::draw_nonzero(rng, 40)));
      }
    } else {
      if (m.d > 2) throw Error(ErrorCode::UnsupportedDimension, "random dense models need d <= 2");
      const int b = static_cast<int>(m.degrees[i]);
      for (int a = 0; a <= b; ++a) {
        if (m.d == 1) {
          p.add_term({a}, Rational(detail::draw_nonzero(rng, 40)));
          continue;
        }
        for (int c = 0; a + c <= b; ++c) p.add_term({a, c}, Rational(detail::draw_nonzero(rng, 40)));
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Positive weights in [1, 97].
inline std::vector<long> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::vector<long> u(n);
  for (auto& x : u) x = 1 + static_cast<long>(rng() % 97);
  return u;
}

inline ToricModel toric_model(const ModelSpec& m) {
  if (!m.toric) throw Error(ErrorCode::InvalidInput, "model is not toric");
  return {m.polytopes, m.weights};
}

/// Checks supplied polynomials against the declared degrees or polytopes.
inline void check_polynomials(const ModelSpec& m) {
  if (!m.polynomials) return;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& f = (*m.polynomials)[i];
    if (f.is_zero()) throw Error(ErrorCode::InvalidInput, "polynomial " + std::to_string(i + 1) + " is zero");
    if (m.toric) {
      auto pts = m.polytopes[i].vertices();
      for (const auto& e : f.support()) pts.push_back(Point(e.begin(), e.end()));
      if (!(convex_hull(pts) == m.polytopes[i]))
        throw Error(ErrorCode::InvalidInput, "polynomial " + std::to_string(i + 1) + " leaves its polytope");
    } else if (f.total_degree() > m.degrees[i] || f.is_laurent()) {
      throw Error(ErrorCode::InvalidInput, "polynomial " + std::to_string(i + 1) + " exceeds its degree");
    }
  }
}

}  // namespace mldeg::io
