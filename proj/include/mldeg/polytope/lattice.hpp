#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mldeg/exactmath/rational.hpp"

namespace mldeg {

using Point = std::vector<long>;

inline long dot(const Point& a, const Point& b) {
  long s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

inline Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

inline Point scaled(const Point& a, long s) {
  Point r(a);
  for (auto& x : r) x *= s;
  return r;
}

inline bool is_zero(const Point& a) {
  for (long x : a)
    if (x != 0) return false;
  return true;
}

/// Divides out the gcd of the entries; the zero vector is returned as is.
inline Point primitive(Point a) {
  long g = 0;
  for (long x : a) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : a) x /= g;
  return a;
}

inline std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
  return s + ")";
}

/// Basis of the integer kernel {x in Z^d : A x = 0} of an integer matrix
/// given by rows. The basis is saturated: it spans every integer vector of
/// the rational kernel. Column operations are tracked in a unimodular U;
/// the columns of U past the pivots span the kernel.
inline std::vector<Point> integer_kernel(const std::vector<Point>& rows, std::size_t d) {
  std::vector<std::vector<Integer>> m;
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "row length differs from ambient dimension");
    m.emplace_back(r.begin(), r.end());
  }
  std::vector<std::vector<Integer>> u(d, std::vector<Integer>(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;

  // column j := a*col_j + b*col_k, col_k := c*col_j + e*col_k
  auto combine = [&](std::size_t j, std::size_t k, const Integer& a, const Integer& b, const Integer& c,
                     const Integer& e) {
    auto apply = [&](std::vector<Integer>& row) {
      Integer x = row[j], y = row[k];
      row[j] = a * x + b * y;
      row[k] = c * x + e * y;
    };
    for (auto& row : m) apply(row);
    for (auto& row : u) apply(row);
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < m.size() && pivot < d; ++r) {
    for (std::size_t k = pivot + 1; k < d; ++k) {
      const Integer x = m[r][pivot], y = m[r][k];
      if (y == 0) continue;
      // extended gcd: s*x + t*y = g
      Integer g = x, s = 1, t = 0, g1 = y, s1 = 0, t1 = 1;
      while (g1 != 0) {
        Integer q = g / g1;
        Integer tmp = g - q * g1;
        g = g1;
        g1 = tmp;
        tmp = s - q * s1;
        s = s1;
        s1 = tmp;
        tmp = t - q * t1;
        t = t1;
        t1 = tmp;
      }
      // [s t; -y/g x/g] has determinant 1
      combine(pivot, k, s, t, Integer(-y / g), Integer(x / g));
    }
    if (m[r][pivot] != 0) ++pivot;
  }

  std::vector<Point> kernel;
  for (std::size_t j = pivot; j < d; ++j) {
    Point v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = u[i][j].convert_to<long>();
    kernel.push_back(v);
  }
  return kernel;
}

/// Rank of an integer vector family over Q.
inline std::size_t rank(const std::vector<Point>& rows, std::size_t d) {
  return d - integer_kernel(rows, d).size();
}

/// Saturated basis of span(vectors) ∩ Z^d.
inline std::vector<Point> saturated_span(const std::vector<Point>& vectors, std::size_t d) {
  return integer_kernel(integer_kernel(vectors, d), d);
}

/// Integer coordinates of v in the given lattice basis, or nullopt when v
/// is not an integer combination of it.
inline std::optional<std::vector<long>> lattice_coordinates(const std::vector<Point>& basis, const Point& v) {
  const std::size_t k = basis.size(), d = v.size();
  // Augmented d x (k+1) system, Gaussian elimination over Q.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = basis[j].at(i);
    a[i][k] = v[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < d; ++col) {
    std::size_t sel = row;
    while (sel < d && a[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(a[sel], a[row]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < d; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<long> c(k, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    Rational x = a[i][k] / a[i][pivot_cols[i]];
    if (denominator_of(x) != 1) return std::nullopt;
    c[pivot_cols[i]] = numerator_of(x).convert_to<long>();
  }
  return c;
}

}  // namespace mldeg
