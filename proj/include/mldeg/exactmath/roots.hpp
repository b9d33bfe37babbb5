#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "mldeg/exactmath/bigfloat.hpp"
#include "mldeg/exactmath/unipoly.hpp"

namespace mldeg {

/// Default certified distance, 2^-40.
inline Rational default_tolerance() { return Rational(Integer(1), Integer(1) << 40); }

enum class Reality { Real, NonReal };

/// A root approximation z with a disk of radius `radius` around it that
/// provably contains exactly one root of the polynomial.
struct CertifiedRoot {
  QComplex center;
  Rational radius;
  Reality reality;
};

struct CertifiedRoots {
  std::vector<CertifiedRoot> roots;
  unsigned precision_bits = 0;

  int real_count() const {
    return static_cast<int>(std::count_if(roots.begin(), roots.end(),
                                          [](const CertifiedRoot& r) { return r.reality == Reality::Real; }));
  }
};

namespace detail {

template <class T>
BigComplex to_big(const T& c, mpfr_prec_t prec) {
  return BigComplex(BigFloat(Rational(c), prec), BigFloat(prec));
}

inline BigComplex to_big(const QComplex& z, mpfr_prec_t prec) {
  return BigComplex(BigFloat(z.re, prec), BigFloat(z.im, prec));
}

/// Simultaneous Aberth-Ehrlich iteration; `start` seeds the iteration when
/// it has the right size.
inline std::vector<BigComplex> aberth(const QPoly& p, mpfr_prec_t prec, const std::vector<BigComplex>& start,
                                      int max_iterations = 4000) {
  const int n = p.degree();
  std::vector<BigComplex> coeffs;
  for (const auto& c : p.coefficients()) coeffs.push_back(to_big(c, prec));
  std::vector<BigComplex> dcoeffs;
  for (std::size_t i = 1; i < coeffs.size(); ++i) dcoeffs.push_back(coeffs[i] * BigFloat(static_cast<long>(i), prec));

  std::vector<BigComplex> z;
  if (start.size() == static_cast<std::size_t>(n)) {
    // Small asymmetric nudge: a real polynomial keeps conjugate-symmetric
    // approximations symmetric, which can pin a pair off the real axis.
    const BigFloat nudge = BigFloat::pow2(-static_cast<long>(prec) / 4, prec);
    for (std::size_t k = 0; k < start.size(); ++k) {
      BigFloat scale = abs(start[k]);
      if (scale < BigFloat(1, prec)) scale = BigFloat(1, prec);
      BigFloat step = nudge * scale * BigFloat(static_cast<long>(k + 1), prec);
      z.emplace_back(BigFloat(start[k].re.to_rational(), prec) + step * BigFloat(Rational(3, 5), prec),
                     BigFloat(start[k].im.to_rational(), prec) + step * BigFloat(Rational(4, 5), prec));
    }
  } else {
    // Circle whose radius is the geometric mean of the root moduli.
    BigFloat ratio = abs(coeffs.front().re) / abs(coeffs.back().re);
    double lr = ratio.is_zero() ? 0.0 : std::log2(std::max(ratio.to_double(), 1e-300)) / n;
    if (!std::isfinite(lr)) lr = static_cast<double>(ratio.exponent()) / n;
    BigFloat radius = BigFloat::pow2(static_cast<long>(std::lround(lr)), prec);
    BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2, prec);
    for (int k = 0; k < n; ++k) {
      BigFloat angle = two_pi * BigFloat(Rational(4 * k + 1, 4 * n), prec) + BigFloat(Rational(2, 5), prec);
      z.emplace_back(radius * cos(angle), radius * sin(angle));
    }
  }

  auto horner = [](const std::vector<BigComplex>& c, const BigComplex& x) {
    BigComplex acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
  };

  std::vector<BigFloat> abs_coeffs;
  for (const auto& c : coeffs) abs_coeffs.push_back(abs(c.re));
  auto horner_abs = [&](const BigFloat& r) {
    BigFloat acc = abs_coeffs.back();
    for (std::size_t i = abs_coeffs.size() - 1; i-- > 0;) acc = acc * r + abs_coeffs[i];
    return acc;
  };

  // A root is settled once its step is negligible or |p(z)| is down at the
  // rounding level of Horner's scheme.
  const BigFloat eps = BigFloat::pow2(-static_cast<long>(prec) + 8, prec);
  const BigFloat noise = BigFloat::pow2(-static_cast<long>(prec) + 6, prec) * BigFloat(static_cast<long>(n + 1), prec);
  std::vector<bool> settled(static_cast<std::size_t>(n), false);
  for (int it = 0; it < max_iterations; ++it) {
    bool converged = true;
    for (int i = 0; i < n; ++i) {
      if (settled[static_cast<std::size_t>(i)]) continue;
      BigComplex pv = horner(coeffs, z[i]);
      if ((pv.re.is_zero() && pv.im.is_zero()) || abs(pv) <= noise * horner_abs(abs(z[i]))) {
        settled[static_cast<std::size_t>(i)] = true;
        continue;
      }
      BigComplex dv = dcoeffs.empty() ? BigComplex(prec) : horner(dcoeffs, z[i]);
      BigComplex ratio = pv / dv;
      BigComplex sum(prec);
      for (int j = 0; j < n; ++j)
        if (j != i) sum = sum + BigComplex(BigFloat(1, prec), BigFloat(prec)) / (z[i] - z[j]);
      BigComplex denom = BigComplex(BigFloat(1, prec), BigFloat(prec)) - ratio * sum;
      BigComplex w = (denom.re.is_zero() && denom.im.is_zero()) ? ratio : ratio / denom;
      if (!w.re.is_finite() || !w.im.is_finite()) continue;
      z[i] = z[i] - w;
      BigFloat scale = abs(z[i]);
      if (scale < BigFloat(1, prec)) scale = BigFloat(1, prec);
      if (abs(w) <= eps * scale)
        settled[static_cast<std::size_t>(i)] = true;
      else
        converged = false;
    }
    if (converged) break;
  }
  return z;
}

inline QComplex to_exact(const BigComplex& z) { return {z.re.to_rational(), z.im.to_rational()}; }

inline QComplex eval_exact(const QPoly& p, const QComplex& z) {
  QComplex acc{p.leading(), Rational(0)};
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * z + QComplex{p[static_cast<std::size_t>(i)], Rational(0)};
  return acc;
}

/// Squared distance strictly exceeds (r1 + r2)^2.
inline bool disks_disjoint(const QComplex& a, const Rational& ra, const QComplex& b, const Rational& rb) {
  Rational s = ra + rb;
  return (a - b).norm2() > s * s;
}

}  // namespace detail

/// Certified approximations of all roots of a squarefree p at one working
/// precision. Smith's inclusion theorem is applied with exact Gaussian
/// rational arithmetic: with W_i = p(z_i) / (lc * prod_{j!=i}(z_i - z_j)),
/// pairwise disjoint disks D(z_i, n|W_i|) each contain exactly one root.
/// Throws PrecisionExhausted when the disks overlap, exceed tol, or leave a
/// root's reality undecided; callers retry with more bits.
inline CertifiedRoots complex_roots_numeric(const QPoly& p, unsigned precision_bits, const Rational& tol,
                                            const std::vector<BigComplex>& seed = {},
                                            std::vector<BigComplex>* approximations = nullptr) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  CertifiedRoots out;
  out.precision_bits = precision_bits;
  const int n = p.degree();
  if (n <= 0) return out;
  const auto prec = static_cast<mpfr_prec_t>(precision_bits);
  auto approx = detail::aberth(p, prec, seed);
  if (approximations) *approximations = approx;

  std::vector<QComplex> z;
  for (const auto& a : approx) {
    if (!a.re.is_finite() || !a.im.is_finite())
      throw Error(ErrorCode::PrecisionExhausted, "root iteration diverged");
    z.push_back(detail::to_exact(a));
  }

  const Rational lc2 = p.leading() * p.leading();
  std::vector<Rational> radius(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    QComplex prod{Rational(1), Rational(0)};
    for (int j = 0; j < n; ++j)
      if (j != i) prod = prod * (z[i] - z[j]);
    Rational den = lc2 * prod.norm2();
    if (den == 0) throw Error(ErrorCode::PrecisionExhausted, "coincident root approximations");
    Rational w2 = detail::eval_exact(p, z[i]).norm2() / den;
    radius[i] = sqrt_upper(w2 * n * n);
    if (radius[i] > tol)
      throw Error(ErrorCode::PrecisionExhausted, "inclusion radius above tolerance at " +
                                                     std::to_string(precision_bits) + " bits");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!detail::disks_disjoint(z[i], radius[i], z[j], radius[j]))
        throw Error(ErrorCode::PrecisionExhausted, "inclusion disks overlap at " + std::to_string(precision_bits) +
                                                       " bits");

  for (int i = 0; i < n; ++i) {
    CertifiedRoot r{z[i], radius[i], Reality::NonReal};
    if (abs(z[i].im) <= radius[i]) {
      // The disk meets the real axis. Its mirror image must avoid every other
      // disk; then the conjugate root is forced back into this disk, i.e. the
      // root is real.
      QComplex mirror{z[i].re, -z[i].im};
      for (int j = 0; j < n; ++j)
        if (j != i && !detail::disks_disjoint(mirror, radius[i], z[j], radius[j]))
          throw Error(ErrorCode::PrecisionExhausted, "reality of a root undecided");
      r.reality = Reality::Real;
    }
    out.roots.push_back(std::move(r));
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
    return a.center.re != b.center.re ? a.center.re < b.center.re : a.center.im < b.center.im;
  });
  return out;
}

/// Adaptive driver: doubles the working precision until certification
/// succeeds or the ceiling is passed.
inline CertifiedRoots complex_roots_certified(const QPoly& p, unsigned start_bits, unsigned ceiling_bits,
                                              const Rational& tol) {
  std::vector<BigComplex> seed;
  for (unsigned bits = start_bits; bits <= ceiling_bits; bits *= 2) {
    std::vector<BigComplex> approx;
    try {
      return complex_roots_numeric(p, bits, tol, seed, &approx);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
      seed = std::move(approx);
    }
  }
  throw Error(ErrorCode::PrecisionExhausted,
              "root certification failed up to " + std::to_string(ceiling_bits) + " bits");
}

}  // namespace mldeg
