#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "mldeg/arrangement/arrangement.hpp"

namespace mldeg {

/// Linear inequality sum coeffs[k] x_k + constant > 0 (strict) or >= 0.
struct Inequality {
  QVector coeffs;
  Rational constant;
  bool strict = false;
};

namespace detail {

/// Scales so that the first nonzero coefficient (or the constant) is +-1;
/// makes duplicates detectable.
inline Inequality normalized(Inequality q) {
  Rational s = 0;
  for (const auto& c : q.coeffs)
    if (c != 0) {
      s = abs(c);
      break;
    }
  if (s == 0) s = q.constant == 0 ? Rational(1) : abs(q.constant);
  for (auto& c : q.coeffs) c /= s;
  q.constant /= s;
  return q;
}

inline bool inequality_less(const Inequality& a, const Inequality& b) {
  if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
  if (a.constant != b.constant) return a.constant < b.constant;
  return a.strict < b.strict;
}

}  // namespace detail

/// Exact feasibility of a system of strict and non-strict inequalities by
/// Fourier-Motzkin elimination.
inline bool feasible(std::vector<Inequality> system, std::size_t nvars) {
  for (std::size_t k = nvars; k-- > 0;) {
    std::vector<Inequality> pos, neg, next;
    for (auto& q : system) {
      if (q.coeffs[k] > 0)
        pos.push_back(std::move(q));
      else if (q.coeffs[k] < 0)
        neg.push_back(std::move(q));
      else
        next.push_back(std::move(q));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Inequality c{QVector(nvars, 0), 0, p.strict || n.strict};
        Rational wp = -n.coeffs[k], wn = p.coeffs[k];
        for (std::size_t j = 0; j < nvars; ++j) c.coeffs[j] = wp * p.coeffs[j] + wn * n.coeffs[j];
        c.coeffs[k] = 0;
        c.constant = wp * p.constant + wn * n.constant;
        next.push_back(std::move(c));
      }
    std::set<Inequality, decltype(&detail::inequality_less)> unique(&detail::inequality_less);
    for (auto& q : next) {
      auto nq = detail::normalized(std::move(q));
      bool trivial = std::all_of(nq.coeffs.begin(), nq.coeffs.end(), [](const Rational& x) { return x == 0; });
      if (trivial) {
        if (nq.constant < 0 || (nq.strict && nq.constant == 0)) return false;
        continue;
      }
      unique.insert(std::move(nq));
    }
    system.assign(unique.begin(), unique.end());
  }
  for (const auto& q : system)
    if (q.constant < 0 || (q.strict && q.constant == 0)) return false;
  return true;
}

struct CellCount {
  std::size_t regions = 0;
  std::size_t bounded = 0;
};

/// Enumerates sign vectors; a sign vector is a region when its open cell
/// is nonempty, and the region is bounded when its recession cone
/// {r : s_i <a_i, r> >= 0} is zero.
inline CellCount count_cells_bruteforce(const Arrangement& a, std::size_t max_hyperplanes = 10,
                                        std::size_t max_dim = 3) {
  const std::size_t n = a.size(), d = a.dim();
  if (n > max_hyperplanes || d > max_dim)
    throw Error(ErrorCode::TooLarge, "brute-force cell enumeration is limited to " +
                                         std::to_string(max_hyperplanes) + " hyperplanes in dimension " +
                                         std::to_string(max_dim));
  CellCount out;
  const auto& hs = a.hyperplanes();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<Inequality> cell, recession;
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = (mask & (1u << i)) ? 1 : -1;
      Inequality q{hs[i].normal, hs[i].offset * s, true};
      for (auto& c : q.coeffs) c *= s;
      cell.push_back(q);
      recession.push_back({q.coeffs, Rational(0), false});
    }
    if (!feasible(cell, d)) continue;
    ++out.regions;
    bool bounded = true;
    for (std::size_t k = 0; k < d && bounded; ++k)
      for (int sgn : {1, -1}) {
        auto sys = recession;
        QVector e(d, 0);
        e[k] = sgn;
        sys.push_back({e, Rational(-1), false});
        if (feasible(sys, d)) {
          bounded = false;
          break;
        }
      }
    if (bounded) ++out.bounded;
  }
  return out;
}

inline std::size_t bounded_regions_bruteforce(const Arrangement& a) { return count_cells_bruteforce(a).bounded; }

}  // namespace mldeg
