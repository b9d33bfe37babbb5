#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mldeg/arrangement/arrangement.hpp"
#include "mldeg/formulas/toric.hpp"
#include "mldeg/oracle/oracle.hpp"

namespace mldeg::io {

using Json = nlohmann::json;

/// A model file: dense degrees or toric polytopes, concrete or generic
/// weights, and optionally the polynomials themselves.
struct ModelSpec {
  std::size_t d = 0;
  bool toric = false;
  std::vector<long> degrees;
  std::vector<LatticePolytope> polytopes;
  std::optional<std::vector<long>> weights;  // nullopt means generic
  std::optional<std::vector<MultiPoly>> polynomials;

  std::size_t size() const { return toric ? polytopes.size() : degrees.size(); }
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline long as_long(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema_error(what + " must be an integer");
  return j.get<long>();
}

inline std::vector<long> long_list(const Json& j, const std::string& what) {
  if (!j.is_array()) schema_error(what + " must be an array");
  std::vector<long> out;
  for (const auto& x : j) out.push_back(as_long(x, what));
  return out;
}

/// Accepts "p/q" strings and plain integers.
inline Rational as_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) schema_error(what + " must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

}  // namespace detail

inline Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<long>::min() && z <= std::numeric_limits<long>::max()) return z.convert_to<long>();
  return z.str();
}

inline Json rational_json(const Rational& q) { return to_string(q); }

inline MultiPoly parse_polynomial(const Json& j, std::size_t d) {
  const auto& terms = detail::field(j, "terms");
  if (!terms.is_array()) detail::schema_error("'terms' must be an array");
  MultiPoly p(d);
  for (const auto& t : terms) {
    auto exps = detail::long_list(detail::field(t, "exps"), "exponent");
    if (exps.size() != d) detail::schema_error("exponent vector of length " + std::to_string(exps.size()) +
                                               " in dimension " + std::to_string(d));
    Exponent e(exps.begin(), exps.end());
    p.add_term(e, detail::as_rational(detail::field(t, "coeff"), "coefficient"));
  }
  return p;
}

inline Json polynomial_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"coeff", to_string(c)}, {"exps", e}});
  return {{"terms", terms}};
}

inline LatticePolytope parse_polytope(const Json& j, std::size_t d) {
  const auto& vs = detail::field(j, "vertices");
  if (!vs.is_array() || vs.empty()) detail::schema_error("'vertices' must be a nonempty array");
  std::vector<Point> pts;
  for (const auto& v : vs) {
    auto p = detail::long_list(v, "vertex coordinate");
    if (p.size() != d) detail::schema_error("vertex of length " + std::to_string(p.size()) + " in dimension " +
                                            std::to_string(d));
    pts.push_back(p);
  }
  return convex_hull(pts);
}

inline Json polytope_json(const LatticePolytope& p) { return {{"vertices", p.vertices()}}; }

inline Json fan_json(const Fan& f) {
  Json cones = Json::array();
  for (const auto& c : f.cones) cones.push_back(c.rays);
  return {{"rays", f.rays}, {"cones", cones}};
}

inline ModelSpec parse_model(const Json& j) {
  ModelSpec m;
  long d = detail::as_long(detail::field(j, "d"), "'d'");
  if (d < 1) detail::schema_error("'d' must be positive");
  m.d = static_cast<std::size_t>(d);
  const auto& mode = detail::field(j, "mode");
  if (mode == "toric") {
    m.toric = true;
    const auto& ps = detail::field(j, "polytopes");
    if (!ps.is_array()) detail::schema_error("'polytopes' must be an array");
    for (const auto& p : ps) m.polytopes.push_back(parse_polytope(p, m.d));
  } else if (mode == "dense") {
    m.degrees = detail::long_list(detail::field(j, "degrees"), "degree");
  } else {
    detail::schema_error("'mode' must be \"dense\" or \"toric\"");
  }
  if (m.size() == 0) detail::schema_error("model without polynomials");
  const auto& w = detail::field(j, "weights");
  if (w.is_string()) {
    if (w != "generic") detail::schema_error("'weights' must be an array or \"generic\"");
  } else {
    m.weights = detail::long_list(w, "weight");
    if (m.weights->size() != m.size()) detail::schema_error("weight count differs from polynomial count");
  }
  if (j.contains("polynomials")) {
    const auto& ps = j.at("polynomials");
    if (!ps.is_array() || ps.size() != m.size()) detail::schema_error("'polynomials' must match the model size");
    std::vector<MultiPoly> f;
    for (const auto& p : ps) f.push_back(parse_polynomial(p, m.d));
    m.polynomials = std::move(f);
  }
  return m;
}

inline Json model_json(const ModelSpec& m) {
  Json j{{"d", m.d}, {"mode", m.toric ? "toric" : "dense"}};
  if (m.toric) {
    Json ps = Json::array();
    for (const auto& p : m.polytopes) ps.push_back(polytope_json(p));
    j["polytopes"] = ps;
  } else {
    j["degrees"] = m.degrees;
  }
  if (m.weights) j["weights"] = *m.weights;
  else j["weights"] = "generic";
  if (m.polynomials) {
    Json ps = Json::array();
    for (const auto& p : *m.polynomials) ps.push_back(polynomial_json(p));
    j["polynomials"] = ps;
  }
  return j;
}

inline Arrangement parse_arrangement(const Json& j) {
  long d = detail::as_long(detail::field(j, "d"), "'d'");
  if (d < 1) detail::schema_error("'d' must be positive");
  const auto& hs = detail::field(j, "hyperplanes");
  if (!hs.is_array()) detail::schema_error("'hyperplanes' must be an array");
  std::vector<Hyperplane> out;
  for (const auto& h : hs) {
    const auto& n = detail::field(h, "normal");
    if (!n.is_array() || n.size() != static_cast<std::size_t>(d))
      detail::schema_error("normal must have " + std::to_string(d) + " entries");
    QVector normal;
    for (const auto& x : n) normal.push_back(detail::as_rational(x, "normal entry"));
    out.push_back({normal, detail::as_rational(detail::field(h, "offset"), "offset")});
  }
  return Arrangement(static_cast<std::size_t>(d), std::move(out));
}

inline Json arrangement_json(const Arrangement& a) {
  Json hs = Json::array();
  for (const auto& h : a.hyperplanes()) {
    Json n = Json::array();
    for (const auto& x : h.normal) n.push_back(to_string(x));
    hs.push_back({{"normal", n}, {"offset", to_string(h.offset)}});
  }
  return {{"d", a.dim()}, {"hyperplanes", hs}};
}

/// Decimal rendering of an approximate coordinate.
inline std::string decimal(const Rational& q, int digits = 20) {
  return BigFloat(q, static_cast<mpfr_prec_t>(4 * digits + 16)).str(digits);
}

inline Json report_json(const CriticalCountReport& r, bool with_points) {
  Json j{{"complex_count", r.complex_count},
         {"real_count", r.real_count ? Json(*r.real_count) : Json(nullptr)},
         {"certified", r.certified},
         {"precision_bits", r.precision_bits},
         {"filtered_extraneous", r.filtered_extraneous},
         {"distinct_only", r.distinct_only},
         {"residual_bound", decimal(r.residual_bound, 6)},
         {"divisor_distance", decimal(r.divisor_distance, 6)}};
  if (with_points) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
      Json re = Json::array(), im = Json::array();
      for (const auto& c : p.coords) {
        re.push_back(decimal(c.re));
        im.push_back(decimal(c.im));
      }
      pts.push_back({{"re", re}, {"im", im}, {"real", p.real}});
    }
    j["points"] = pts;
  }
  return j;
}

}  // namespace mldeg::io
