#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "mldeg/exactmath/rational.hpp"

namespace mldeg {

/// Owning MPFR float. Each value carries its own precision; binary
/// operations round to the larger of the two operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long value, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigFloat(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(prec) {
    mpfr_set_q(v_, q.backend().data(), rnd);
  }
  BigFloat(const Integer& z, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_z(v_, z.backend().data(), MPFR_RNDN); }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

  /// The exact dyadic rational this float represents.
  Rational to_rational() const {
    if (is_zero() || !is_finite()) return Rational(0);
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), v_);
    if (e >= 0) return Rational(m << static_cast<unsigned>(e));
    return Rational(m, Integer(1) << static_cast<unsigned>(-e));
  }

  std::string str(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

#define MLDEG_BIGFLOAT_BINOP(op, fn)                                       \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {      \
    BigFloat r(std::max(a.precision(), b.precision()));                     \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                        \
    return r;                                                               \
  }
  MLDEG_BIGFLOAT_BINOP(+, mpfr_add)
  MLDEG_BIGFLOAT_BINOP(-, mpfr_sub)
  MLDEG_BIGFLOAT_BINOP(*, mpfr_mul)
  MLDEG_BIGFLOAT_BINOP(/, mpfr_div)
#undef MLDEG_BIGFLOAT_BINOP

  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

  friend BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.v_, a.v_, rnd);
    return r;
  }
  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat cos(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sin(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e at the given precision.
  static BigFloat pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

/// Upper bound on sqrt(q) as an exact dyadic rational.
inline Rational sqrt_upper(const Rational& q, mpfr_prec_t prec = 64) {
  if (q <= 0) return Rational(0);
  BigFloat x(q, prec, MPFR_RNDU);
  return sqrt(x, MPFR_RNDU).to_rational();
}

struct BigComplex {
  BigFloat re, im;

  explicit BigComplex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re * s, a.im * s}; }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re, a.im); }
};

/// Exact Gaussian rational, used to certify numeric approximations.
struct QComplex {
  Rational re, im;

  friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Rational norm2() const { return re * re + im * im; }
};

}  // namespace mldeg
