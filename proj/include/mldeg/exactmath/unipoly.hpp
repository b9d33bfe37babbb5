#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "mldeg/exactmath/rational.hpp"

namespace mldeg {

/// Dense univariate polynomial, lowest degree first. The coefficient ring
/// only needs value-initialization to zero, +, -, * and ==; the class keeps
/// the leading coefficient nonzero so degree() is always meaningful.
template <class T>
class UniPoly {
 public:
  using coefficient_type = T;

  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(T value) { return UniPoly(std::vector<T>{std::move(value)}); }
  static UniPoly monomial(T value, std::size_t power) {
    std::vector<T> c(power + 1);
    c[power] = std::move(value);
    return UniPoly(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  /// Coefficient of x^i; zero beyond the stored range.
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const T& leading() const { return c_.back(); }
  const std::vector<T>& coefficients() const { return c_; }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend UniPoly operator*(UniPoly a, const T& s) { return a *= s; }
  friend UniPoly operator*(const T& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T{}) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Multiplies by x^k.
  UniPoly shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<T> c(k);
    c.insert(c.end(), c_.begin(), c_.end());
    return UniPoly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }

  std::vector<T> c_;
};

using QPoly = UniPoly<Rational>;
using ZPoly = UniPoly<Integer>;

template <class T>
struct is_unipoly : std::false_type {};
template <class T>
struct is_unipoly<UniPoly<T>> : std::true_type {};

/// x * k for scalars and for polynomial coefficients alike.
template <class T>
T times_int(const T& x, long k) {
  if constexpr (is_unipoly<T>::value)
    return x * typename T::coefficient_type(k);
  else
    return x * T(k);
}

template <class T>
UniPoly<T> derivative(const UniPoly<T>& p) {
  if (p.degree() < 1) return {};
  std::vector<T> c(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) c[i - 1] = times_int(p[i], static_cast<long>(i));
  return UniPoly<T>(std::move(c));
}

/// Horner evaluation into any type V that T converts into.
template <class T, class V>
V evaluate(const UniPoly<T>& p, const V& x) {
  if (p.is_zero()) return V{};
  V acc = V(p.leading());
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * x + V(p[static_cast<std::size_t>(i)]);
  return acc;
}

inline Rational evaluate(const QPoly& p, const Rational& x) { return evaluate<Rational, Rational>(p, x); }

/// p(x) -> p(a x + b), used for shifting/scaling.
template <class T>
UniPoly<T> compose_linear(const UniPoly<T>& p, const T& a, const T& b) {
  UniPoly<T> lin{b, a};
  UniPoly<T> out;
  for (int i = p.degree(); i >= 0; --i) out = out * lin + UniPoly<T>::constant(p[static_cast<std::size_t>(i)]);
  return out;
}

// ---------------------------------------------------------------------------
// Field arithmetic over Q
// ---------------------------------------------------------------------------

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
  if (a.degree() < b.degree()) return {QPoly{}, a};
  std::vector<Rational> r = a.coefficients();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational& lb = b.leading();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const Rational& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    Rational f = top / lb;
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading());
}

// ---------------------------------------------------------------------------
// Integer polynomials: content, primitive parts, exact division
// ---------------------------------------------------------------------------

inline Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly primitive_part(const ZPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> c = p.coefficients();
  for (auto& x : c) x /= g;
  return ZPoly(std::move(c));
}

/// Clears denominators and removes content: the primitive integer
/// polynomial with positive leading coefficient proportional to p.
inline ZPoly primitive_integer(const QPoly& p) {
  if (p.is_zero()) return {};
  Integer l = 1;
  for (const auto& c : p.coefficients()) l = lcm(l, denominator_of(c));
  std::vector<Integer> c;
  c.reserve(p.size());
  for (const auto& x : p.coefficients()) c.push_back(numerator_of(x) * (l / denominator_of(x)));
  return primitive_part(ZPoly(std::move(c)));
}

inline QPoly to_rational(const ZPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& x : p.coefficients()) c.emplace_back(x);
  return QPoly(std::move(c));
}

inline Integer exact_quotient(const Integer& a, const Integer& b) { return a / b; }

/// Exact division in Z[x]; throws if b does not divide a.
inline ZPoly exact_quotient(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "exact division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw Error(ErrorCode::InvalidInput, "inexact polynomial division");
  std::vector<Integer> r = a.coefficients();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Integer& lb = b.leading();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    Integer& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    Integer f, rem;
    boost::multiprecision::divide_qr(top, lb, f, rem);
    if (rem != 0) throw Error(ErrorCode::InvalidInput, "inexact polynomial division");
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < db; ++j)
    if (r[static_cast<std::size_t>(j)] != 0) throw Error(ErrorCode::InvalidInput, "inexact polynomial division");
  return ZPoly(std::move(q));
}

/// Some power of lc(b) times a, reduced modulo b (a "sparse" pseudo-remainder;
/// the power is irrelevant wherever primitive parts are taken afterwards).
template <class T>
UniPoly<T> pseudo_remainder(const UniPoly<T>& a, const UniPoly<T>& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "pseudo-division by zero polynomial");
  UniPoly<T> r = a;
  const int db = b.degree();
  const T& lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    const std::size_t shift = static_cast<std::size_t>(r.degree() - db);
    T lr = r.leading();
    r = r * lb - (b * lr).shifted(shift);
  }
  return r;
}

namespace detail {

inline std::uint64_t mod_prime(const Integer& x, std::uint64_t p) {
  Integer r = x % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (b %= p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

/// Degree of gcd(a mod p, b mod p), or -1 when p divides a leading
/// coefficient. Since the image of the true gcd divides the modular one,
/// degree 0 proves coprimality over Q.
inline int gcd_degree_mod(const ZPoly& a, const ZPoly& b, std::uint64_t p) {
  if (mod_prime(a.leading(), p) == 0 || mod_prime(b.leading(), p) == 0) return -1;
  auto reduce = [p](const ZPoly& q) {
    std::vector<std::uint64_t> c;
    for (const auto& x : q.coefficients()) c.push_back(mod_prime(x, p));
    return c;
  };
  auto trim = [](std::vector<std::uint64_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  };
  std::vector<std::uint64_t> x = reduce(a), y = reduce(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    const std::uint64_t inv = pow_mod(y.back(), p - 2, p);
    while (x.size() >= y.size()) {
      const std::uint64_t f = x.back() * inv % p;
      const std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) x[shift + j] = (x[shift + j] + (p - f) * y[j]) % p;
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

}  // namespace detail

/// gcd over Q, returned monic (zero if both are zero). A modular image
/// settles the common coprime case; otherwise the primitive remainder
/// sequence over Z keeps coefficient growth in check.
inline QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  ZPoly x = primitive_integer(a), y = primitive_integer(b);
  if (x.degree() == 0 || y.degree() == 0) return QPoly::constant(Rational(1));
  for (std::uint64_t p : {2147483647ull, 2147483629ull})
    if (int dg = detail::gcd_degree_mod(x, y, p); dg >= 0) {
      if (dg == 0) return QPoly::constant(Rational(1));
      break;
    }
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    ZPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return monic(to_rational(x));
}

/// Exact quotient a / b over Q; throws when b does not divide a.
inline QPoly exact_quotient(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::InvalidInput, "inexact polynomial division");
  return q;
}

/// p / gcd(p, p'), monic. Same distinct roots as p, all simple.
inline QPoly squarefree_part(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree part of the zero polynomial");
  if (p.degree() == 0) return QPoly::constant(Rational(1));
  QPoly g = gcd(p, derivative(p));
  return monic(exact_quotient(p, g));
}

inline bool is_squarefree(const QPoly& p) {
  if (p.degree() < 1) return !p.is_zero();
  return gcd(p, derivative(p)).degree() == 0;
}

}  // namespace mldeg
