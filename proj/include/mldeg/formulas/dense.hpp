#pragma once

#include <cstddef>
#include <vector>

#include "mldeg/exactmath/series.hpp"

namespace mldeg {

inline void check_degrees(const std::vector<long>& b) {
  for (long x : b)
    if (x < 1) throw Error(ErrorCode::InvalidInput, "degrees must be positive");
}

/// Coefficients of z^0..z^order in (1-z)^d / prod_i (1 - b_i z).
inline std::vector<Integer> generic_series(int d, const std::vector<long>& b, std::size_t order) {
  if (d < 1) throw Error(ErrorCode::InvalidInput, "parameter count d must be at least 1");
  check_degrees(b);
  IntSeries acc = IntSeries::binomial(-1, static_cast<unsigned>(d), order);
  for (long x : b) acc = acc * series_reciprocal(IntSeries({Integer(1), Integer(-x)}, order));
  std::vector<Integer> out;
  for (std::size_t k = 0; k <= order; ++k) out.push_back(acc[k]);
  return out;
}

/// ML degree of n generic polynomials of degrees b in d unknowns: the
/// coefficient of z^d in (1-z)^d / prod_i (1 - b_i z).
inline Integer generic_ml_degree(int d, const std::vector<long>& b) {
  return generic_series(d, b, static_cast<std::size_t>(d)).back();
}

inline Integer plane_curve_ml_degree(const std::vector<long>& b) {
  check_degrees(b);
  Integer total = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    total += Integer(b[i]) * (b[i] - 2);
    for (std::size_t j = i + 1; j < b.size(); ++j) total += Integer(b[i]) * b[j];
  }
  return total;
}

/// Toric ML degree of n generic bilinear-type polynomials whose Newton
/// polytopes are the rectangles [0,s_i] x [0,t_i].
inline Integer rectangle_ml_degree(const std::vector<long>& s, const std::vector<long>& t) {
  if (s.size() != t.size()) throw Error(ErrorCode::DimensionMismatch, "rectangle side lists differ in length");
  check_degrees(s);
  check_degrees(t);
  Integer ss = 0, st = 0, mixed = 0, perimeter = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    ss += s[k];
    st += t[k];
    mixed += Integer(s[k]) * t[k];
    perimeter += s[k] + t[k];
  }
  return ss * st + mixed - perimeter + 1;
}

/// Bound on the bounded regions of a real arrangement of plane curves of
/// degrees b, one less per odd-degree curve.
inline Integer viro_bound(const std::vector<long>& b) {
  check_degrees(b);
  Integer total = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    total += Integer(b[i] - 1) * (b[i] - 2) / 2;
    for (std::size_t j = i + 1; j < b.size(); ++j) total += Integer(b[i]) * b[j];
    if (b[i] % 2 != 0) total -= 1;
  }
  return total;
}

}  // namespace mldeg
