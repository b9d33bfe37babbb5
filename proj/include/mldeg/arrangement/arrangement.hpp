#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mldeg/exactmath/unipoly.hpp"

namespace mldeg {

using QVector = std::vector<Rational>;

/// The affine hyperplane <normal, theta> + offset = 0.
struct Hyperplane {
  QVector normal;
  Rational offset;
};

namespace detail {

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(std::vector<QVector>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

inline std::size_t rank_of(std::vector<QVector> m, std::size_t cols) { return rref(m, cols).size(); }

}  // namespace detail

class Arrangement {
 public:
  Arrangement(std::size_t d, std::vector<Hyperplane> hyperplanes) : d_(d), hyperplanes_(std::move(hyperplanes)) {
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
      const auto& h = hyperplanes_[i];
      if (h.normal.size() != d_) throw Error(ErrorCode::DimensionMismatch, "normal of wrong length");
      if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x == 0; }))
        throw Error(ErrorCode::InvalidInput, "hyperplane " + std::to_string(i + 1) + " has a zero normal");
      for (std::size_t j = 0; j < i; ++j)
        if (detail::rank_of({augmented(i), augmented(j)}, d_ + 1) == 1)
          throw Error(ErrorCode::InvalidInput, "hyperplanes " + std::to_string(j + 1) + " and " +
                                                   std::to_string(i + 1) + " coincide");
    }
  }

  std::size_t dim() const { return d_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

  /// Row (a_i, c_i).
  QVector augmented(std::size_t i) const {
    QVector r = hyperplanes_[i].normal;
    r.push_back(hyperplanes_[i].offset);
    return r;
  }

  std::size_t normal_rank() const {
    std::vector<QVector> m;
    for (const auto& h : hyperplanes_) m.push_back(h.normal);
    return detail::rank_of(m, d_);
  }

  /// Homogenized central arrangement c_i theta_0 + <a_i, theta> in R^{d+1}.
  Arrangement coned() const {
    std::vector<Hyperplane> hs;
    for (const auto& h : hyperplanes_) {
      QVector n{h.offset};
      n.insert(n.end(), h.normal.begin(), h.normal.end());
      hs.push_back({n, Rational(0)});
    }
    return Arrangement(d_ + 1, std::move(hs));
  }

 private:
  std::size_t d_;
  std::vector<Hyperplane> hyperplanes_;
};

struct Flat {
  std::vector<std::size_t> hyperplanes;  // all hyperplanes containing the flat
  std::vector<QVector> equations;        // canonical RREF of the augmented system
  std::size_t dim = 0;
  Integer mobius = 0;
};

/// Nonempty intersections ordered by reverse inclusion; flats[0] is the
/// whole space.
struct IntersectionPoset {
  std::size_t d = 0;
  std::vector<Flat> flats;
};

struct PosetLimits {
  std::size_t max_hyperplanes = 12;
  std::size_t max_dim = 4;
};

inline IntersectionPoset build_poset(const Arrangement& a, PosetLimits limits = {}) {
  const std::size_t n = a.size(), d = a.dim();
  if (n > limits.max_hyperplanes || d > limits.max_dim)
    throw Error(ErrorCode::TooLarge, "poset enumeration is limited to " + std::to_string(limits.max_hyperplanes) +
                                         " hyperplanes in dimension " + std::to_string(limits.max_dim));
  IntersectionPoset poset;
  poset.d = d;
  std::map<std::vector<QVector>, std::size_t> seen;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) rows.push_back(a.augmented(i));
    auto pivots = detail::rref(rows, d + 1);
    if (!pivots.empty() && pivots.back() == d) continue;  // inconsistent
    if (seen.count(rows)) continue;
    Flat f;
    f.dim = d - pivots.size();
    for (std::size_t i = 0; i < n; ++i) {
      auto test = rows;
      test.push_back(a.augmented(i));
      if (detail::rank_of(test, d + 1) == pivots.size()) f.hyperplanes.push_back(i);
    }
    f.equations = rows;
    seen.emplace(rows, poset.flats.size());
    poset.flats.push_back(std::move(f));
  }
  std::stable_sort(poset.flats.begin(), poset.flats.end(),
                   [](const Flat& x, const Flat& y) { return x.dim > y.dim; });
  for (std::size_t x = 0; x < poset.flats.size(); ++x) {
    auto& fx = poset.flats[x];
    if (x == 0) {
      fx.mobius = 1;
      continue;
    }
    Integer sum = 0;
    for (std::size_t y = 0; y < x; ++y) {
      const auto& hy = poset.flats[y].hyperplanes;
      if (poset.flats[y].dim > fx.dim && std::includes(fx.hyperplanes.begin(), fx.hyperplanes.end(), hy.begin(), hy.end()))
        sum += poset.flats[y].mobius;
    }
    fx.mobius = -sum;
  }
  return poset;
}

/// chi(t) = sum over flats of mu(x) t^{dim x}.
inline ZPoly characteristic_polynomial(const IntersectionPoset& p) {
  std::vector<Integer> c(p.d + 1, 0);
  for (const auto& f : p.flats) c[f.dim] += f.mobius;
  return ZPoly(std::move(c));
}

inline Integer bounded_regions(const Arrangement& a) {
  if (a.normal_rank() < a.dim()) return 0;
  Integer v = evaluate(characteristic_polynomial(build_poset(a)), Integer(1));
  return a.dim() % 2 == 0 ? v : Integer(-v);
}

inline Integer total_regions(const Arrangement& a) {
  Integer v = evaluate(characteristic_polynomial(build_poset(a)), Integer(-1));
  return a.dim() % 2 == 0 ? v : Integer(-v);
}

/// Degree of the variety of reciprocal hyperplanes, read off the Hilbert
/// polynomial sum_i (-1)^i C(r-1, i-1) sum_{codim X = i} mu(X) of the coned
/// arrangement: d! times its leading coefficient is the d-th difference.
inline Integer terao_degree(const Arrangement& a) {
  const std::size_t d = a.dim();
  Arrangement cone = a.coned();
  if (cone.normal_rank() < d + 1)
    throw Error(ErrorCode::InfinitelyManyCriticalPoints, "the coned arrangement has a positive-dimensional center");
  auto poset = build_poset(cone, {12, 5});
  std::vector<Integer> by_codim(d + 2, 0);
  for (const auto& f : poset.flats) by_codim[d + 1 - f.dim] += f.mobius;
  auto binom = [](long n, long k) {
    if (k < 0 || n < k) return Integer(0);
    Integer r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  auto hilbert = [&](long r) {
    Integer h = 0;
    for (std::size_t i = 0; i <= d + 1; ++i) {
      Integer term = binom(r - 1, static_cast<long>(i) - 1) * by_codim[i];
      h += i % 2 == 0 ? term : Integer(-term);
    }
    return h;
  };
  const long r0 = static_cast<long>(d) + 2;
  Integer diff = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    Integer term = binom(static_cast<long>(d), static_cast<long>(k)) * hilbert(r0 + static_cast<long>(k));
    diff += (d - k) % 2 == 0 ? term : Integer(-term);
  }
  return diff;
}

struct LinearMlDegree {
  Integer degree;
  // Every critical point of a real arrangement is real, one per bounded region.
  bool all_critical_points_real = true;
};

inline LinearMlDegree linear_ml_degree(const Arrangement& a, const std::vector<long>& u) {
  if (u.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "weight count differs from hyperplane count");
  for (long x : u)
    if (x == 0) throw Error(ErrorCode::InvalidInput, "weights must be nonzero");
  if (a.normal_rank() < a.dim())
    throw Error(ErrorCode::InfinitelyManyCriticalPoints, "normals span a proper subspace");
  return {bounded_regions(a), true};
}

/// Arrangement without hyperplane k.
inline Arrangement deletion(const Arrangement& a, std::size_t k) {
  auto hs = a.hyperplanes();
  hs.erase(hs.begin() + static_cast<long>(k));
  return Arrangement(a.dim(), std::move(hs));
}

/// Arrangement induced on hyperplane k, in coordinates of a parametrization
/// theta = p + B t of that hyperplane. Parallel hyperplanes disappear and
/// coinciding traces are merged.
inline Arrangement restriction(const Arrangement& a, std::size_t k) {
  const std::size_t d = a.dim();
  const auto& h = a.hyperplanes()[k];
  std::size_t pivot = 0;
  while (h.normal[pivot] == 0) ++pivot;
  QVector p(d, 0);
  p[pivot] = -h.offset / h.normal[pivot];
  std::vector<QVector> basis;
  for (std::size_t j = 0; j < d; ++j) {
    if (j == pivot) continue;
    QVector b(d, 0);
    b[j] = 1;
    b[pivot] = -h.normal[j] / h.normal[pivot];
    basis.push_back(b);
  }
  std::vector<Hyperplane> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == k) continue;
    const auto& g = a.hyperplanes()[i];
    Hyperplane r{QVector(d - 1, 0), g.offset};
    for (std::size_t j = 0; j < d; ++j) r.offset += g.normal[j] * p[j];
    bool zero = true;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      for (std::size_t t = 0; t < d; ++t) r.normal[j] += g.normal[t] * basis[j][t];
      zero = zero && r.normal[j] == 0;
    }
    if (zero) continue;
    bool dup = false;
    for (const auto& o : out) {
      QVector x = o.normal, y = r.normal;
      x.push_back(o.offset);
      y.push_back(r.offset);
      dup = dup || detail::rank_of({x, y}, d) == 1;
    }
    if (!dup) out.push_back(std::move(r));
  }
  return Arrangement(d - 1, std::move(out));
}

}  // namespace mldeg
