#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mldeg/exactmath/rational.hpp"

namespace mldeg {

/// Integer power series truncated at z^order. Arithmetic never looks past
/// the truncation order, so products of long series stay cheap.
class IntSeries {
 public:
  explicit IntSeries(std::size_t order) : c_(order + 1) {}
  IntSeries(std::vector<Integer> coeffs, std::size_t order) : c_(order + 1) {
    for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) c_[i] = std::move(coeffs[i]);
  }

  /// (1 + a z)^e truncated; negative e is not supported (use reciprocal).
  static IntSeries binomial(const Integer& a, unsigned e, std::size_t order) {
    IntSeries s(order);
    Integer binom = 1, power = 1;
    for (std::size_t k = 0; k <= order && k <= e; ++k) {
      s.c_[k] = binom * power;
      binom = binom * (e - k) / (k + 1);
      power *= a;
    }
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const Integer& operator[](std::size_t k) const { return c_[k]; }
  Integer& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Integer>& coefficients() const { return c_; }

  friend IntSeries operator*(const IntSeries& a, const IntSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    IntSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend bool operator==(const IntSeries&, const IntSeries&) = default;

 private:
  std::vector<Integer> c_;
};

/// t with s*t = 1 mod z^(N+1). Needs s(0) = +-1 to stay integral.
inline IntSeries series_reciprocal(const IntSeries& s) {
  const Integer& c0 = s[0];
  if (c0 != 1 && c0 != -1) throw Error(ErrorCode::NonUnitConstantTerm, "constant term " + c0.str() + " is not +-1");
  IntSeries t(s.order());
  t[0] = c0;  // 1/c0 == c0 for a unit
  for (std::size_t k = 1; k <= s.order(); ++k) {
    Integer acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += s[j] * t[k - j];
    t[k] = -acc * c0;
  }
  return t;
}

/// [z^k] num * prod(den)^-1. Every denominator factor must start with 1.
inline Integer series_coefficient(const IntSeries& num, std::span<const IntSeries> den_factors, std::size_t k) {
  std::size_t order = num.order();
  for (const auto& f : den_factors) order = std::min(order, f.order());
  if (k > order)
    throw Error(ErrorCode::InsufficientOrder,
                "coefficient z^" + std::to_string(k) + " requested from series of order " + std::to_string(order));
  IntSeries acc = num;
  for (const auto& f : den_factors) {
    if (f[0] != 1) throw Error(ErrorCode::NonUnitConstantTerm, "denominator factor must have constant term 1");
    acc = acc * series_reciprocal(f);
  }
  return acc[k];
}

}  // namespace mldeg
