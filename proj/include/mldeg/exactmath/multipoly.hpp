#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mldeg/exactmath/rational.hpp"
#include "mldeg/exactmath/unipoly.hpp"

namespace mldeg {

using Exponent = std::vector<int>;

/// Sparse (Laurent) polynomial in a fixed number of variables with rational
/// coefficients. Zero coefficients are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t k) {
    MultiPoly p(nvars);
    Exponent e(nvars, 0);
    e.at(k) = 1;
    p.add_term(e, Rational(1));
    return p;
  }
  static MultiPoly monomial(const Exponent& e, const Rational& c) {
    MultiPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_)
      throw Error(ErrorCode::DimensionMismatch, "exponent of length " + std::to_string(e.size()) +
                                                    " in polynomial of " + std::to_string(nvars_) + " variables");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const Rational& s) {
    MultiPoly out(a.nvars_);
    if (s == 0) return out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, c * s);
    return out;
  }
  friend MultiPoly operator*(const Rational& s, const MultiPoly& a) { return a * s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = constant(nvars_, Rational(1));
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Partial derivative; Laurent exponents differentiate as usual.
  MultiPoly partial(std::size_t k) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponent f = e;
      f[k] -= 1;
      out.add_term(f, c * e[k]);
    }
    return out;
  }

  /// Multiplies by the monomial x^shift (entries may be negative).
  MultiPoly shifted(const Exponent& shift) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t k = 0; k < nvars_; ++k) f[k] += shift.at(k);
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  int total_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      best = std::max(best, s);
    }
    return best;
  }

  /// Coordinatewise minimum exponent (zero vector for the zero polynomial).
  Exponent min_exponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t k = 0; k < nvars_; ++k) m[k] = first ? e[k] : std::min(m[k], e[k]);
      first = false;
    }
    return m;
  }

  bool is_laurent() const {
    for (const auto& [e, c] : terms_)
      for (int x : e)
        if (x < 0) return true;
    return false;
  }

  std::vector<Exponent> support() const {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
  }

  /// Evaluation at a point of any field-like type V (Laurent terms divide).
  template <class V>
  V evaluate(std::span<const V> point) const {
    if (point.size() != nvars_) throw Error(ErrorCode::DimensionMismatch, "evaluation point has wrong length");
    V acc{};
    for (const auto& [e, c] : terms_) {
      V term = V(c);
      for (std::size_t k = 0; k < nvars_; ++k) {
        int p = e[k];
        for (int i = 0; i < std::abs(p); ++i) term = p > 0 ? V(term * point[k]) : V(term / point[k]);
      }
      acc = acc + term;
    }
    return acc;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorCode::DimensionMismatch, "polynomials in different numbers of variables");
  }

  std::size_t nvars_;
  std::map<Exponent, Rational> terms_;
};

/// Univariate view of a polynomial in one variable (no Laurent terms).
inline QPoly to_unipoly(const MultiPoly& p) {
  if (p.nvars() != 1) throw Error(ErrorCode::DimensionMismatch, "expected a univariate polynomial");
  std::vector<Rational> c;
  for (const auto& [e, v] : p.terms()) {
    if (e[0] < 0) throw Error(ErrorCode::InvalidInput, "Laurent term in ordinary polynomial context");
    if (static_cast<std::size_t>(e[0]) >= c.size()) c.resize(static_cast<std::size_t>(e[0]) + 1);
    c[static_cast<std::size_t>(e[0])] = v;
  }
  return QPoly(std::move(c));
}

inline MultiPoly from_unipoly(const QPoly& p) {
  MultiPoly out(1);
  for (std::size_t i = 0; i < p.size(); ++i) out.add_term(Exponent{static_cast<int>(i)}, p[i]);
  return out;
}

}  // namespace mldeg
