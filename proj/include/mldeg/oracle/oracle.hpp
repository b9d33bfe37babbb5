#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mldeg/exactmath/bivariate.hpp"
#include "mldeg/exactmath/roots.hpp"
#include "mldeg/exactmath/sturm.hpp"

namespace mldeg {

/// One element of the coprime basis of the divisor. Factors of weight zero
/// carry no logarithmic term but their points are still excluded.
struct DivisorFactor {
  MultiPoly poly;
  long weight = 0;
};

struct LikelihoodSystem {
  std::size_t d = 0;
  std::vector<MultiPoly> f;
  std::vector<long> u;
  bool torus = false;
  std::vector<DivisorFactor> factors;
  std::vector<MultiPoly> cleared;  // g_k, numerators of d log f / d theta_k
  MultiPoly common_factor;         // gcd of the g_k with the divisor; 1 if none
};

struct CriticalPoint {
  std::vector<QComplex> coords;
  bool real = false;
};

struct CriticalCountReport {
  int complex_count = 0;
  std::optional<int> real_count;
  bool certified = false;
  int filtered_extraneous = 0;
  unsigned precision_bits = 0;
  Rational residual_bound = 0;     // max |g_k| over the reported points
  Rational divisor_distance = 0;   // min |h_j| over the reported points
  bool distinct_only = false;      // some counted solution is not simple
  std::optional<Shear> shear;
  std::vector<CriticalPoint> points;
};

struct OracleOptions {
  unsigned precision_bits = 256;
  unsigned ceiling_bits = 4096;
  Rational tol = default_tolerance();
  unsigned long seed = 20240601;
  int max_shear_attempts = 60;
};

namespace detail {

inline BiPoly as_bipoly(const MultiPoly& p) {
  return p.nvars() == 1 ? BiPoly::constant(to_unipoly(p)) : to_bipoly(p);
}

inline MultiPoly from_bipoly(const BiPoly& p, std::size_t d) {
  if (d == 2) return to_multipoly(p);
  return from_unipoly(p.is_zero() ? QPoly{} : p[0]);
}

inline BiPoly x_only(const QPoly& q) { return BiPoly::constant(q); }

/// Squarefree pieces (factor, multiplicity) of a univariate polynomial.
inline std::vector<std::pair<QPoly, int>> yun(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.degree() < 1) return out;
  QPoly df = derivative(f), a = gcd(f, df);
  QPoly b = exact_quotient(f, a), c = exact_quotient(df, a), d = c - derivative(b);
  for (int i = 1; b.degree() > 0; ++i) {
    QPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = exact_quotient(b, g);
    d = exact_quotient(d, g) - derivative(b);
  }
  return out;
}

/// Squarefree pieces in Q[x][y]: x-content first, then the primitive part
/// by Yun's algorithm in y.
inline std::vector<std::pair<BiPoly, int>> yun(const BiPoly& f) {
  std::vector<std::pair<BiPoly, int>> out;
  QPoly content = content_x(f);
  for (auto& [q, m] : yun(content)) out.emplace_back(x_only(q), m);
  BiPoly b = divide_by_x(f, content);
  if (b.degree() < 1) return out;
  BiPoly db = partial_y(b), a = gcd(b, db);
  b = exact_quotient(b, a);
  BiPoly d = exact_quotient(db, a) - partial_y(b);
  for (int i = 1; b.degree() > 0; ++i) {
    BiPoly g = gcd(b, d);
    if (!is_constant(g)) out.emplace_back(g, i);
    b = exact_quotient(b, g);
    d = exact_quotient(d, g) - partial_y(b);
  }
  return out;
}

/// Pairwise coprime squarefree polynomials whose products give every input
/// up to constants.
inline std::vector<BiPoly> coprime_basis(const std::vector<BiPoly>& pieces) {
  std::vector<BiPoly> basis, todo(pieces.rbegin(), pieces.rend());
  while (!todo.empty()) {
    BiPoly q = normalized(todo.back());
    todo.pop_back();
    if (is_constant(q)) continue;
    bool split = false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      BiPoly g = gcd(basis[j], q);
      if (is_constant(g)) continue;
      BiPoly h = basis[j];
      basis.erase(basis.begin() + static_cast<long>(j));
      todo.push_back(exact_quotient(h, g));
      todo.push_back(exact_quotient(q, g));
      todo.push_back(g);
      split = true;
      break;
    }
    if (!split) basis.push_back(q);
  }
  return basis;
}

/// For h in a coprime basis refining q: h divides q or is coprime to it.
inline bool divides(const BiPoly& h, const BiPoly& q) { return !is_constant(gcd(h, q)); }

}  // namespace detail

/// Cleared critical equations of prod f_i^{u_i}. Monomial factors (and
/// Laurent denominators) become coordinate factors; `torus` additionally
/// excludes every coordinate hyperplane.
inline LikelihoodSystem build_system(const std::vector<MultiPoly>& f, const std::vector<long>& u,
                                     bool torus = false) {
  if (f.empty() || f.size() != u.size())
    throw Error(ErrorCode::DimensionMismatch, "need one weight per polynomial");
  const std::size_t d = f[0].nvars();
  if (d != 1 && d != 2) throw Error(ErrorCode::UnsupportedDimension, "the oracle handles one or two variables");
  LikelihoodSystem sys;
  sys.d = d;
  sys.f = f;
  sys.u = u;
  std::vector<long> coord_weight(d, 0);
  std::vector<bool> coord_present(d, false);
  std::vector<std::vector<std::pair<BiPoly, int>>> pieces;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].nvars() != d) throw Error(ErrorCode::DimensionMismatch, "polynomials in different numbers of variables");
    if (f[i].is_zero()) throw Error(ErrorCode::ZeroPolynomial, "polynomial " + std::to_string(i + 1) + " is zero");
    if (u[i] == 0) throw Error(ErrorCode::InvalidInput, "weight " + std::to_string(i + 1) + " is zero");
    if (f[i].is_laurent()) torus = true;
    Exponent low = f[i].min_exponents();
    for (std::size_t k = 0; k < d; ++k) {
      coord_weight[k] += u[i] * low[k];
      coord_present[k] = coord_present[k] || low[k] != 0;
      low[k] = -low[k];
    }
    pieces.push_back(detail::yun(detail::as_bipoly(f[i].shifted(low))));
  }
  sys.torus = torus;

  std::vector<BiPoly> all;
  for (const auto& ps : pieces)
    for (const auto& [q, m] : ps) all.push_back(q);
  std::vector<BiPoly> basis = detail::coprime_basis(all);
  for (const auto& h : basis) {
    long w = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (const auto& [q, m] : pieces[i])
        if (detail::divides(h, q)) w += u[i] * m;
    sys.factors.push_back({detail::from_bipoly(h, d), w});
  }
  for (std::size_t k = 0; k < d; ++k)
    if (coord_present[k] || torus) sys.factors.push_back({MultiPoly::variable(d, k), coord_weight[k]});

  for (std::size_t k = 0; k < d; ++k) {
    MultiPoly g(d);
    for (std::size_t j = 0; j < sys.factors.size(); ++j) {
      if (sys.factors[j].weight == 0) continue;
      MultiPoly term = sys.factors[j].poly.partial(k) * Rational(sys.factors[j].weight);
      for (std::size_t l = 0; l < sys.factors.size(); ++l)
        if (l != j && sys.factors[l].weight != 0) term = term * sys.factors[l].poly;
      g += term;
    }
    if (g.is_zero())
      throw Error(ErrorCode::DegenerateSystem, "critical equation " + std::to_string(k + 1) +
                                                   " vanishes identically (f is constant along theta_" +
                                                   std::to_string(k + 1) + ")");
    sys.cleared.push_back(std::move(g));
  }

  BiPoly common = detail::as_bipoly(sys.cleared[0]);
  for (std::size_t k = 1; k < d; ++k) common = gcd(common, detail::as_bipoly(sys.cleared[k]));
  BiPoly shared = BiPoly::constant(QPoly::constant(Rational(1)));
  if (!is_constant(common))
    for (const auto& fac : sys.factors) {
      BiPoly h = detail::as_bipoly(fac.poly);
      if (!is_constant(gcd(h, common))) shared = shared * h;
    }
  sys.common_factor = detail::from_bipoly(normalized(shared), d);
  return sys;
}

namespace detail {

inline BigComplex big_constant(const Rational& q, mpfr_prec_t prec) {
  return BigComplex(BigFloat(q, prec), BigFloat(prec));
}

inline BigComplex evaluate_big(const MultiPoly& p, const std::vector<BigComplex>& point, mpfr_prec_t prec) {
  BigComplex acc(prec);
  for (const auto& [e, c] : p.terms()) {
    BigComplex term = big_constant(c, prec);
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int i = 0; i < std::abs(e[k]); ++i)
        term = e[k] > 0 ? term * point[k] : term / point[k];
    acc = acc + term;
  }
  return acc;
}

inline BigComplex evaluate_big(const QPoly& p, const BigComplex& x, mpfr_prec_t prec) {
  if (p.is_zero()) return BigComplex(prec);
  BigComplex acc = big_constant(p.leading(), prec);
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * x + big_constant(p[static_cast<std::size_t>(i)], prec);
  return acc;
}

/// r with the roots it shares with `other` removed (all of them when other
/// is zero).
inline QPoly remove_common(QPoly r, const QPoly& other) {
  if (r.degree() < 1) return r;
  if (other.is_zero()) return QPoly::constant(Rational(1));
  QPoly g = gcd(r, other);
  return g.degree() > 0 ? exact_quotient(r, g) : r;
}

/// Numerator of h(x, -s0(x)/s1(x)) after multiplying by s1^deg_y(h).
inline QPoly substitute_lift(const BiPoly& h, const QPoly& s1, const QPoly& s0) {
  const int deg = h.degree();
  std::vector<QPoly> num_pow{QPoly::constant(Rational(1))}, den_pow{QPoly::constant(Rational(1))};
  for (int b = 0; b < deg; ++b) {
    num_pow.push_back(num_pow.back() * (-s0));
    den_pow.push_back(den_pow.back() * s1);
  }
  QPoly out;
  for (int b = 0; b <= deg; ++b)
    out += h[static_cast<std::size_t>(b)] * num_pow[static_cast<std::size_t>(b)] *
           den_pow[static_cast<std::size_t>(deg - b)];
  return out;
}

inline bool monic_in_y(const BiPoly& p) { return p.is_zero() || total_degree(p) == p.degree(); }

inline Shear random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> entry(-5, 5);
  while (true) {
    Shear m{{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}}};
    long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det == 1 || det == -1) return m;
  }
}

inline QComplex to_qcomplex(const BigComplex& z) { return {z.re.to_rational(), z.im.to_rational()}; }

inline void finish_numeric(CriticalCountReport& rep, const LikelihoodSystem& sys,
                           const std::vector<std::vector<BigComplex>>& pts, mpfr_prec_t prec) {
  BigFloat residual(prec), distance(prec);
  bool first = true;
  for (const auto& p : pts) {
    for (const auto& g : sys.cleared) {
      BigFloat r = abs(evaluate_big(g, p, prec));
      if (residual < r) residual = r;
    }
    for (const auto& fac : sys.factors) {
      BigFloat r = abs(evaluate_big(fac.poly, p, prec));
      if (first || r < distance) distance = r;
      first = false;
    }
  }
  rep.residual_bound = residual.to_rational();
  rep.divisor_distance = distance.to_rational();
}

}  // namespace detail

/// Exact count in one variable: distinct roots of g off the divisor.
inline CriticalCountReport count_critical_d1(const LikelihoodSystem& sys, const OracleOptions& opt = {}) {
  if (sys.d != 1) throw Error(ErrorCode::DimensionMismatch, "count_critical_d1 needs a univariate system");
  CriticalCountReport rep;
  QPoly g = to_unipoly(sys.cleared[0]);
  rep.certified = true;
  if (g.degree() < 1) {
    rep.real_count = 0;
    return rep;
  }
  QPoly sq = squarefree_part(g), r = sq;
  for (const auto& fac : sys.factors) r = detail::remove_common(r, to_unipoly(fac.poly));
  rep.filtered_extraneous = sq.degree() - r.degree();
  rep.complex_count = std::max(r.degree(), 0);
  rep.real_count = real_root_count(r);
  rep.distinct_only = r.degree() > 0 && gcd(r, derivative(g)).degree() > 0;
  if (r.degree() < 1) return rep;
  auto roots = complex_roots_certified(r, opt.precision_bits, opt.ceiling_bits, opt.tol);
  rep.precision_bits = roots.precision_bits;
  const auto prec = static_cast<mpfr_prec_t>(roots.precision_bits);
  std::vector<std::vector<BigComplex>> pts;
  for (const auto& root : roots.roots) {
    rep.points.push_back({{root.center}, root.reality == Reality::Real});
    pts.push_back({detail::to_big(root.center, prec)});
  }
  detail::finish_numeric(rep, sys, pts, prec);
  return rep;
}

namespace detail {

/// Exact elimination under one change of coordinates.
struct Elimination {
  Shear shear;
  QPoly resultant, critical, s1, s0;  // critical: first coordinates of the solutions off the divisor
  int candidates = 0;                 // distinct roots of the resultant
  bool stacked = false;               // several solutions over one divisor coordinate
};

/// nullopt when the shear is rejected (not monic, or two solutions off the
/// divisor share a first coordinate).
inline std::optional<Elimination> eliminate(const LikelihoodSystem& sys, const Shear& m) {
  BiPoly g1 = apply_shear(sys.cleared[0], m), g2 = apply_shear(sys.cleared[1], m);
  std::vector<BiPoly> hs;
  for (const auto& fac : sys.factors) hs.push_back(apply_shear(fac.poly, m));
  bool monic = monic_in_y(g1) && monic_in_y(g2);
  for (const auto& h : hs) monic = monic && monic_in_y(h);
  if (!monic) return std::nullopt;

  Elimination e;
  e.shear = m;
  if (g1.degree() < 1 || g2.degree() < 1) {
    // A nonzero constant equation has no solutions.
    e.critical = QPoly::constant(Rational(1));
    return e;
  }
  e.resultant = resultant(g1, g2);
  if (e.resultant.is_zero()) throw Error(ErrorCode::DegenerateSystem, "eliminant vanishes identically");
  QPoly sq = squarefree_part(e.resultant);
  e.candidates = sq.degree();
  std::tie(e.s1, e.s0) = first_subresultant(g1, g2);

  // First coordinates of divisor points where an extraneous solution can
  // sit: intersections of two factors and singular points of one (the
  // cleared equations vanish there). Factors of weight zero are tested
  // separately below.
  QPoly special = QPoly::constant(Rational(1));
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (sys.factors[i].weight == 0) continue;
    std::vector<QPoly> local{resultant(hs[i], partial_y(hs[i]))};
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (j != i && (j > i || sys.factors[j].weight == 0)) local.push_back(resultant(hs[i], hs[j]));
    for (const auto& r : local) {
      if (r.is_zero()) continue;
      QPoly c = gcd(sq, r);
      if (c.degree() > 0) special = special * remove_common(c, special);
    }
  }
  QPoly rest = exact_quotient(sq, special);
  if (gcd(rest, e.s1).degree() > 0) return std::nullopt;
  QPoly stacked = gcd(special, e.s1);
  e.stacked = stacked.degree() > 0;
  QPoly kept = exact_quotient(special, stacked);
  for (std::size_t j = 0; j < hs.size(); ++j)
    if (sys.factors[j].weight != 0 && kept.degree() > 0)
      kept = remove_common(kept, divmod(substitute_lift(hs[j], e.s1, e.s0), kept).second);
  rest = rest * kept;
  for (std::size_t j = 0; j < hs.size(); ++j)
    if (sys.factors[j].weight == 0 && rest.degree() > 0)
      rest = remove_common(rest, divmod(substitute_lift(hs[j], e.s1, e.s0), rest).second);
  e.critical = rest;
  return e;
}

}  // namespace detail

/// Count in two variables. After a random unimodular change of coordinates
/// that makes every polynomial monic in the second variable, the first
/// coordinates of the solutions are the roots of Res(g1, g2); the second
/// coordinate is read off the first subresultant. Solutions on the divisor
/// are removed exactly, so complex and real counts are exact; the roots are
/// then certified numerically and lifted.
///
/// Over a divisor point where several solutions stack up, the whole fibre
/// is discarded. A solution off the divisor can only hide there by an
/// accident of the projection, so in that case two more shears are tried
/// and the largest count is kept.
inline CriticalCountReport count_critical_d2(const LikelihoodSystem& sys, const OracleOptions& opt = {}) {
  if (sys.d != 2) throw Error(ErrorCode::DimensionMismatch, "count_critical_d2 needs a bivariate system");
  if (!sys.common_factor.is_zero() && sys.common_factor.total_degree() > 0)
    throw Error(ErrorCode::DegenerateSystem, "critical equations share a factor with the divisor");
  if (!is_constant(gcd(to_bipoly(sys.cleared[0]), to_bipoly(sys.cleared[1]))))
    throw Error(ErrorCode::DegenerateSystem, "critical equations share a curve of solutions");

  std::mt19937_64 rng(opt.seed);
  std::optional<detail::Elimination> best;
  int accepted = 0, wanted = 1;
  for (int attempt = 0; attempt < opt.max_shear_attempts && accepted < wanted; ++attempt) {
    auto e = detail::eliminate(sys, detail::random_unimodular(rng));
    if (!e) continue;
    ++accepted;
    if (e->stacked) wanted = 3;
    if (!best || e->critical.degree() > best->critical.degree()) best = std::move(e);
  }
  if (!best)
    throw Error(ErrorCode::DegenerateSystem, "no generic projection found after " +
                                                 std::to_string(opt.max_shear_attempts) + " random shears");

  const QPoly& rest = best->critical;
  const Shear& m = best->shear;
  CriticalCountReport rep;
  rep.shear = m;
  rep.certified = true;
  rep.filtered_extraneous = best->candidates - std::max(rest.degree(), 0);
  rep.complex_count = std::max(rest.degree(), 0);
  rep.real_count = real_root_count(rest);
  rep.distinct_only = rest.degree() > 0 && gcd(rest, derivative(best->resultant)).degree() > 0;
  if (rest.degree() < 1) return rep;

  auto roots = complex_roots_certified(rest, opt.precision_bits, opt.ceiling_bits, opt.tol);
  rep.precision_bits = roots.precision_bits;
  const auto prec = static_cast<mpfr_prec_t>(roots.precision_bits);
  std::vector<std::vector<BigComplex>> pts;
  for (const auto& root : roots.roots) {
    BigComplex x = detail::to_big(root.center, prec);
    BigComplex y = detail::big_constant(Rational(0), prec) -
                   detail::evaluate_big(best->s0, x, prec) / detail::evaluate_big(best->s1, x, prec);
    std::vector<BigComplex> theta;
    for (std::size_t r = 0; r < 2; ++r) theta.push_back(x * BigFloat(m[r][0], prec) + y * BigFloat(m[r][1], prec));
    bool real = root.reality == Reality::Real;
    if (real) {
      theta[0].im = BigFloat(prec);
      theta[1].im = BigFloat(prec);
    }
    rep.points.push_back({{detail::to_qcomplex(theta[0]), detail::to_qcomplex(theta[1])}, real});
    pts.push_back(std::move(theta));
  }
  detail::finish_numeric(rep, sys, pts, prec);
  return rep;
}

inline CriticalCountReport count_critical(const LikelihoodSystem& sys, const OracleOptions& opt = {}) {
  return sys.d == 1 ? count_critical_d1(sys, opt) : count_critical_d2(sys, opt);
}

struct SemicontinuityVerdict {
  Integer generic_value;
  int special_count = 0;
  bool pass = false;
};

inline SemicontinuityVerdict semicontinuity_check(const Integer& generic_value, const std::vector<MultiPoly>& special,
                                                  const std::vector<long>& u, const OracleOptions& opt = {}) {
  auto rep = count_critical(build_system(special, u), opt);
  return {generic_value, rep.complex_count, Integer(rep.complex_count) <= generic_value};
}

}  // namespace mldeg
