#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mldeg/exactmath/unipoly.hpp"

namespace mldeg {

namespace detail {

/// Positive rescaling to a primitive integer polynomial; signs of values
/// are preserved, which is all a Sturm chain needs.
inline QPoly positive_rescaled(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer l = 1;
  for (const auto& c : p.coefficients()) l = lcm(l, denominator_of(c));
  std::vector<Integer> c;
  for (const auto& x : p.coefficients()) c.push_back(numerator_of(x) * (l / denominator_of(x)));
  Integer g = abs(content(ZPoly(c)));
  for (auto& x : c) x /= g;
  return to_rational(ZPoly(std::move(c)));
}

inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace detail

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{detail::positive_rescaled(p), detail::positive_rescaled(derivative(p))};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    QPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(detail::positive_rescaled(-r));
  }
  return chain;
}

namespace detail {

inline int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int changes_at(const std::vector<QPoly>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sign(evaluate(q, x)));
  return sign_changes(s);
}

inline int changes_at_infinity(const std::vector<QPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int lead = sign(q.leading());
    s.push_back(!positive && (q.degree() % 2 == 1) ? -lead : lead);
  }
  return sign_changes(s);
}

}  // namespace detail

/// Number of real roots of a squarefree p in the open interval (lo, hi), or
/// on the whole line when no interval is given.
inline int real_root_count(const QPoly& p, std::optional<std::pair<Rational, Rational>> interval = std::nullopt) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "real root count of the zero polynomial");
  if (!is_squarefree(p)) throw Error(ErrorCode::NotSquarefree, "Sturm counting needs a squarefree polynomial");
  if (p.degree() == 0) return 0;
  const auto chain = sturm_chain(p);
  if (!interval) return detail::changes_at_infinity(chain, false) - detail::changes_at_infinity(chain, true);
  const auto& [lo, hi] = *interval;
  if (!(lo < hi)) return 0;
  // Sturm counts (lo, hi]; drop a root sitting exactly at hi.
  int n = detail::changes_at(chain, lo) - detail::changes_at(chain, hi);
  if (evaluate(p, hi) == 0) --n;
  return n;
}

}  // namespace mldeg
