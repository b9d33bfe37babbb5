#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "mldeg/exactmath/bareiss.hpp"
#include "mldeg/exactmath/multipoly.hpp"
#include "mldeg/exactmath/unipoly.hpp"

namespace mldeg {

/// Polynomial in y whose coefficients are polynomials in x: Q[x][y].
using BiPoly = UniPoly<QPoly>;

inline BiPoly to_bipoly(const MultiPoly& p) {
  if (p.nvars() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a bivariate polynomial");
  std::vector<std::vector<Rational>> rows;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] < 0 || e[1] < 0) throw Error(ErrorCode::InvalidInput, "Laurent term in ordinary polynomial context");
    auto j = static_cast<std::size_t>(e[1]), i = static_cast<std::size_t>(e[0]);
    if (j >= rows.size()) rows.resize(j + 1);
    if (i >= rows[j].size()) rows[j].resize(i + 1);
    rows[j][i] = c;
  }
  std::vector<QPoly> coeffs;
  coeffs.reserve(rows.size());
  for (auto& r : rows) coeffs.emplace_back(std::move(r));
  return BiPoly(std::move(coeffs));
}

inline MultiPoly to_multipoly(const BiPoly& p) {
  MultiPoly out(2);
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < p[j].size(); ++i) out.add_term({static_cast<int>(i), static_cast<int>(j)}, p[j][i]);
  return out;
}

inline int total_degree(const BiPoly& p) {
  int best = -1;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (!p[j].is_zero()) best = std::max(best, p[j].degree() + static_cast<int>(j));
  return best;
}

inline BiPoly partial_y(const BiPoly& p) { return derivative(p); }

inline BiPoly partial_x(const BiPoly& p) {
  std::vector<QPoly> c;
  c.reserve(p.size());
  for (const auto& q : p.coefficients()) c.push_back(derivative(q));
  return BiPoly(std::move(c));
}

/// Substitutes x = x0, leaving a univariate polynomial in y.
inline QPoly specialize_x(const BiPoly& p, const Rational& x0) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& q : p.coefficients()) c.push_back(evaluate(q, x0));
  return QPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

namespace detail {

inline Integer denominator_lcm(const BiPoly& p) {
  Integer l = 1;
  for (const auto& q : p.coefficients())
    for (const auto& c : q.coefficients()) l = lcm(l, denominator_of(c));
  return l;
}

inline UniPoly<ZPoly> scaled_to_integer(const BiPoly& p, const Integer& scale) {
  std::vector<ZPoly> out;
  out.reserve(p.size());
  for (const auto& q : p.coefficients()) {
    std::vector<Integer> c;
    c.reserve(q.size());
    for (const auto& x : q.coefficients()) c.push_back(numerator_of(x) * (scale / denominator_of(x)));
    out.emplace_back(std::move(c));
  }
  return UniPoly<ZPoly>(std::move(out));
}

template <class T>
Matrix<T> sylvester(const UniPoly<T>& p, const UniPoly<T>& q) {
  const auto m = static_cast<std::size_t>(p.degree()), n = static_cast<std::size_t>(q.degree());
  Matrix<T> s(m + n, std::vector<T>(m + n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = p[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = q[n - k];
  return s;
}

}  // namespace detail

/// Res_y(p, q) as a polynomial in x, via the Sylvester determinant
/// evaluated by Bareiss elimination over Z[x] after clearing denominators.
inline QPoly resultant(const BiPoly& p, const BiPoly& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant of a zero polynomial");
  if (p.degree() == 0 && q.degree() == 0)
    throw Error(ErrorCode::DegenerateElimination, "both inputs have degree 0 in the eliminated variable");
  const Integer lp = detail::denominator_lcm(p), lq = detail::denominator_lcm(q);
  auto ip = detail::scaled_to_integer(p, lp), iq = detail::scaled_to_integer(q, lq);
  ZPoly det = bareiss_determinant(detail::sylvester(ip, iq));
  // Res(lp*p, lq*q) = lp^deg(q) * lq^deg(p) * Res(p, q)
  Integer scale = boost::multiprecision::pow(lp, static_cast<unsigned>(q.degree())) *
                  boost::multiprecision::pow(lq, static_cast<unsigned>(p.degree()));
  return to_rational(det) * (Rational(1) / Rational(scale));
}

/// Resultant of two univariate polynomials over Q (a rational number).
inline Rational resultant(const QPoly& p, const QPoly& q) {
  std::vector<QPoly> pc, qc;
  for (const auto& c : p.coefficients()) pc.push_back(QPoly::constant(c));
  for (const auto& c : q.coefficients()) qc.push_back(QPoly::constant(c));
  QPoly r = resultant(BiPoly(std::move(pc)), BiPoly(std::move(qc)));
  return r.coeff(0);
}

/// Coefficients (s1, s0) of the first subresultant s1(x) y + s0(x) of p and q
/// in y, up to a nonzero constant factor. Where Res(p, q) vanishes and the
/// leading coefficients do not, s1 != 0 exactly when the common factor of
/// the fibres is linear, and then y = -s0 / s1 is the common root.
inline std::pair<QPoly, QPoly> first_subresultant(const BiPoly& p, const BiPoly& q) {
  const int m = p.degree(), n = q.degree();
  if (m < 1 || n < 1) throw Error(ErrorCode::DegenerateElimination, "subresultant needs positive degrees in y");
  if (n == 1) return {q[1], q[0]};
  if (m == 1) return {p[1], p[0]};
  auto ip = detail::scaled_to_integer(p, detail::denominator_lcm(p));
  auto iq = detail::scaled_to_integer(q, detail::denominator_lcm(q));
  const auto rows = static_cast<std::size_t>(m + n - 2), width = rows + 1;
  // Column c holds the coefficient of y^(m+n-2-c).
  Matrix<ZPoly> full(rows, std::vector<ZPoly>(width));
  std::size_t r = 0;
  for (int s = n - 2; s >= 0; --s, ++r)
    for (int t = 0; t <= m; ++t) full[r][width - 1 - static_cast<std::size_t>(s + t)] = ip[static_cast<std::size_t>(t)];
  for (int s = m - 2; s >= 0; --s, ++r)
    for (int t = 0; t <= n; ++t) full[r][width - 1 - static_cast<std::size_t>(s + t)] = iq[static_cast<std::size_t>(t)];
  auto minor = [&](std::size_t last) {
    Matrix<ZPoly> mtx(rows, std::vector<ZPoly>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j + 1 < rows; ++j) mtx[i][j] = full[i][j];
      mtx[i][rows - 1] = full[i][last];
    }
    return to_rational(bareiss_determinant(std::move(mtx)));
  };
  return {minor(width - 2), minor(width - 1)};
}

// ---------------------------------------------------------------------------
// gcd in Q[x][y]
// ---------------------------------------------------------------------------

inline QPoly content_x(const BiPoly& p) {
  QPoly g;
  for (const auto& c : p.coefficients()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

inline BiPoly divide_by_x(const BiPoly& p, const QPoly& d) {
  std::vector<QPoly> c;
  c.reserve(p.size());
  for (const auto& q : p.coefficients()) c.push_back(exact_quotient(q, d));
  return BiPoly(std::move(c));
}

inline BiPoly primitive_part(const BiPoly& p) {
  if (p.is_zero()) return p;
  return divide_by_x(p, content_x(p));
}

/// Scales so the leading x-coefficient of the leading y-coefficient is 1.
inline BiPoly normalized(const BiPoly& p) {
  if (p.is_zero()) return p;
  return p * QPoly::constant(Rational(1) / p.leading().leading());
}

/// Exact quotient in Q[x][y]; throws when b does not divide a.
inline BiPoly exact_quotient(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw Error(ErrorCode::InvalidInput, "inexact bivariate division");
  BiPoly r = a;
  std::vector<QPoly> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    QPoly f = exact_quotient(r.leading(), b.leading());
    q[shift] = f;
    r = r - (b * f).shifted(shift);
  }
  if (!r.is_zero()) throw Error(ErrorCode::InvalidInput, "inexact bivariate division");
  return BiPoly(std::move(q));
}

/// gcd over Q, normalized; primitive remainder sequence in y over Q[x].
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  QPoly c = gcd(content_x(a), content_x(b));
  BiPoly x = primitive_part(a), y = primitive_part(b);
  if (x.degree() == 0 || y.degree() == 0) return normalized(BiPoly::constant(c));
  // A common factor of positive y-degree survives every specialization
  // that keeps both leading coefficients.
  for (long x0 = 0, tries = 0; tries < 3 && x0 < 50; ++x0) {
    const Rational at(x0);
    if (evaluate(x.leading(), at) == 0 || evaluate(y.leading(), at) == 0) continue;
    ++tries;
    if (gcd(specialize_x(x, at), specialize_x(y, at)).degree() == 0) return normalized(BiPoly::constant(c));
  }
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero() && y.degree() > 0) {
    BiPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  // y nonzero of y-degree 0 means the primitive parts are coprime.
  BiPoly g = y.is_zero() ? x : BiPoly::constant(QPoly::constant(Rational(1)));
  return normalized(g * c);
}

inline bool is_constant(const BiPoly& p) { return p.degree() <= 0 && (p.is_zero() || p[0].degree() <= 0); }

// ---------------------------------------------------------------------------
// Linear changes of coordinates
// ---------------------------------------------------------------------------

/// 2x2 integer matrix acting on coordinates: theta = M * (x, y).
using Shear = std::array<std::array<long, 2>, 2>;

/// p(theta) expressed in the new coordinates (x, y) with theta = M (x, y).
inline BiPoly apply_shear(const MultiPoly& p, const Shear& m) {
  if (p.nvars() != 2) throw Error(ErrorCode::DimensionMismatch, "shear needs a bivariate polynomial");
  const BiPoly t1{QPoly{Rational(0), Rational(m[0][0])}, QPoly::constant(Rational(m[0][1]))};
  const BiPoly t2{QPoly{Rational(0), Rational(m[1][0])}, QPoly::constant(Rational(m[1][1]))};
  int max1 = 0, max2 = 0;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] < 0 || e[1] < 0) throw Error(ErrorCode::InvalidInput, "Laurent term in ordinary polynomial context");
    max1 = std::max(max1, e[0]);
    max2 = std::max(max2, e[1]);
  }
  const BiPoly one = BiPoly::constant(QPoly::constant(Rational(1)));
  std::vector<BiPoly> pow1{one}, pow2{one};
  for (int i = 0; i < max1; ++i) pow1.push_back(pow1.back() * t1);
  for (int i = 0; i < max2; ++i) pow2.push_back(pow2.back() * t2);
  BiPoly out;
  for (const auto& [e, c] : p.terms())
    out += pow1[static_cast<std::size_t>(e[0])] * pow2[static_cast<std::size_t>(e[1])] * QPoly::constant(c);
  return out;
}

}  // namespace mldeg
