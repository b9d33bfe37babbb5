#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mldeg/exactmath/unipoly.hpp"

namespace mldeg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Fraction-free Gaussian elimination (Bareiss). Every division is exact in
/// the coefficient ring, so T only needs exact_quotient(T, T) besides ring
/// operations: integers and integer polynomials both qualify.
template <class T>
T bareiss_determinant(Matrix<T> m) {
  const std::size_t n = m.size();
  if (n == 0) {
    if constexpr (is_unipoly<T>::value)
      return T::constant(typename T::coefficient_type(1));
    else
      return T(1);
  }
  bool negate = false;
  T prev;
  if constexpr (is_unipoly<T>::value)
    prev = T::constant(typename T::coefficient_type(1));
  else
    prev = T(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == T{}) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == T{}) ++swap_row;
      if (swap_row == n) return T{};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = exact_quotient(num, prev);
      }
      m[i][k] = T{};
    }
    prev = m[k][k];
  }
  T det = m[n - 1][n - 1];
  return negate ? T(-det) : det;
}

}  // namespace mldeg
