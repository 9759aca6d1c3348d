#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "njlab/families.hpp"
#include "njlab/flow.hpp"
#include "njlab/iterate.hpp"

namespace njl {

using json = nlohmann::json;

struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what, std::string where_ = "")
      : std::runtime_error(where_.empty() ? what : where_ + ": " + what),
        where(std::move(where_)) {}
  std::string where;
};

// Parsed field description: either a named family with parameters or an
// explicit component list. `doc` is the normalized form (canonical rational
// strings), so parse(serialize(spec)) is the identity.
struct FieldSpec {
  std::string family;  // empty for explicit components
  json doc;
  Rational lambda = 0;
  PolyMap field;  // the full map/field, lambda I included
};

namespace detail {

inline Rational json_rational(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::exception& e) {
    throw SpecError(e.what(), where);
  }
  throw SpecError("expected a rational string like \"11/16\"", where);
}

// Univariate polynomial from [[coeff, power], ...].
inline MultiPoly json_poly1(const json& j, const std::string& where) {
  if (!j.is_array()) throw SpecError("expected [[coeff, power], ...]", where);
  MultiPoly p(1);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2)
      throw SpecError("each term must be [coeff, power]", where);
    const int e = term[1].get<int>();
    if (e < 0) throw SpecError("negative exponent", where);
    p.add_term({e}, json_rational(term[0], where));
  }
  return p;
}

inline json poly1_json(const MultiPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({to_string(c), e[0]});
  return out;
}

// Polynomial in nvars variables from [{"coeff": "p/q", "exps": [..]}, ...].
inline MultiPoly json_polyn(const json& j, int nvars, const std::string& where) {
  if (!j.is_array()) throw SpecError("expected a term list", where);
  MultiPoly p(nvars);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff") || !term.contains("exps"))
      throw SpecError("each term needs coeff and exps", where);
    const auto& ex = term["exps"];
    if (!ex.is_array() || static_cast<int>(ex.size()) != nvars)
      throw SpecError("exps length must equal nvars", where);
    MultiPoly::Exps e;
    for (const auto& k : ex) {
      const int v = k.get<int>();
      if (v < 0) throw SpecError("negative exponent", where);
      e.push_back(v);
    }
    p.add_term(std::move(e), json_rational(term["coeff"], where));
  }
  return p;
}

inline json polyn_json(const MultiPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms())
    out.push_back({{"coeff", to_string(c)}, {"exps", e}});
  return out;
}

}  // namespace detail

inline FieldSpec parse_field_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(e.what(), "json");
  }
  if (!j.is_object()) throw SpecError("top-level value must be an object", "json");

  FieldSpec spec;
  if (j.contains("family")) {
    spec.family = j["family"].get<std::string>();
    if (!j.contains("params") || !j["params"].is_object())
      throw SpecError("family spec needs a params object", "params");
    const json& p = j["params"];
    json norm;
    if (spec.family == "y2") {
      Y2Params par;
      par.lambda = detail::json_rational(p.at("lambda"), "params.lambda");
      par.k = p.value("k", 1);
      if (par.k < 1) throw SpecError("k must be >= 1", "params.k");
      spec.lambda = par.lambda;
      spec.field = make_y2(par);
      norm = {{"lambda", to_string(par.lambda)}, {"k", par.k}};
    } else if (spec.family == "linf") {
      LinfParams par;
      par.lambda = detail::json_rational(p.at("lambda"), "params.lambda");
      par.v1 = detail::json_rational(p.at("v1"), "params.v1");
      par.alpha = detail::json_rational(p.at("alpha"), "params.alpha");
      par.b1 = detail::json_rational(p.at("b1"), "params.b1");
      par.g = detail::json_poly1(p.at("g"), "params.g");
      try {
        check_linf(par);
      } catch (const std::exception& e) {
        throw SpecError(e.what(), "params");
      }
      spec.lambda = par.lambda;
      spec.field = make_linf(par);
      norm = {{"lambda", to_string(par.lambda)},
              {"v1", to_string(par.v1)},
              {"alpha", to_string(par.alpha)},
              {"b1", to_string(par.b1)},
              {"g", detail::poly1_json(par.g)}};
    } else if (spec.family == "hnr") {
      HnrParams par;
      par.n = p.value("n", 3);
      par.r = p.value("r", 2);
      par.a = detail::json_poly1(p.at("a"), "params.a");
      spec.lambda = detail::json_rational(p.at("lambda"), "params.lambda");
      PolyMap H(PolyMap::identity(1));
      try {
        H = make_hnr(par);
      } catch (const std::exception& e) {
        throw SpecError(e.what(), "params");
      }
      spec.field = PolyMap::scalar(par.n, spec.lambda) + H;
      norm = {{"lambda", to_string(spec.lambda)},
              {"n", par.n},
              {"r", par.r},
              {"a", detail::poly1_json(par.a)}};
    } else if (spec.family == "ld_normal") {
      LdNormalParams par;
      par.lambda = detail::json_rational(p.at("lambda"), "params.lambda");
      par.a = detail::json_poly1(p.at("a"), "params.a");
      par.b = detail::json_poly1(p.at("b"), "params.b");
      par.c = p.contains("c") ? detail::json_poly1(p["c"], "params.c")
                              : MultiPoly(1);
      par.d = p.contains("d") ? detail::json_poly1(p["d"], "params.d")
                              : MultiPoly(1);
      par.f = detail::json_polyn(p.at("f"), 2, "params.f");
      spec.lambda = par.lambda;
      spec.field = make_ld_normal(par);
      norm = {{"lambda", to_string(par.lambda)},
              {"a", detail::poly1_json(par.a)},
              {"b", detail::poly1_json(par.b)},
              {"c", detail::poly1_json(par.c)},
              {"d", detail::poly1_json(par.d)},
              {"f", detail::polyn_json(par.f)}};
    } else {
      throw SpecError("unknown family: " + spec.family, "family");
    }
    spec.doc = {{"family", spec.family}, {"params", norm}};
  } else {
    if (!j.contains("nvars") || !j.contains("components") ||
        !j.contains("lambda"))
      throw SpecError("explicit spec needs nvars, components, lambda", "json");
    const int nvars = j["nvars"].get<int>();
    if (nvars < 1) throw SpecError("nvars must be positive", "nvars");
    spec.lambda = detail::json_rational(j["lambda"], "lambda");
    const json& comps = j["components"];
    if (!comps.is_array() || comps.empty())
      throw SpecError("components must be a nonempty list", "components");
    std::vector<MultiPoly> c;
    for (std::size_t i = 0; i < comps.size(); ++i)
      c.push_back(detail::json_polyn(comps[i], nvars,
                                     "components[" + std::to_string(i) + "]"));
    spec.field = PolyMap(std::move(c));
    json norm_comps = json::array();
    for (int i = 0; i < spec.field.size(); ++i)
      norm_comps.push_back(detail::polyn_json(spec.field[i]));
    spec.doc = {{"nvars", nvars},
                {"lambda", to_string(spec.lambda)},
                {"components", norm_comps}};
  }
  return spec;
}

inline std::string serialize_field_spec(const FieldSpec& spec) {
  return spec.doc.dump(2);
}

// ---- trace export --------------------------------------------------------

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void csv_header(std::ostream& os, const char* index, int n) {
  os << index;
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  os << "\n";
}

}  // namespace detail

inline void emit_trace_csv(const OrbitTrace& tr, std::ostream& os) {
  const int n = tr.states.empty() ? 0 : static_cast<int>(tr.states[0].size());
  detail::csv_header(os, "t", n);
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    os << detail::fmt17(tr.times[i]);
    for (int k = 0; k < n; ++k) os << "," << detail::fmt17(tr.states[i](k));
    os << "\n";
  }
}

inline void emit_trace_csv(const DiscreteTrace& tr, std::ostream& os) {
  const int n = tr.states.empty() ? 0 : static_cast<int>(tr.states[0].size());
  detail::csv_header(os, "n", n);
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    os << i;
    for (int k = 0; k < n; ++k) os << "," << detail::fmt17(tr.states[i](k));
    os << "\n";
  }
}

inline json config_json(const SimConfig& cfg) {
  return {{"rel_tol", cfg.rel_tol},
          {"abs_tol", cfg.abs_tol},
          {"t_max", cfg.t_max},
          {"escape_radius", cfg.escape_radius},
          {"converge_radius", cfg.converge_radius},
          {"converge_dwell", cfg.converge_dwell}};
}

inline json trace_json(const OrbitTrace& tr, const SimConfig& cfg) {
  json states = json::array();
  for (const auto& s : tr.states) {
    json row = json::array();
    for (Eigen::Index k = 0; k < s.size(); ++k) row.push_back(s(k));
    states.push_back(std::move(row));
  }
  return {{"type", "flow"},
          {"verdict", verdict_name(tr.verdict)},
          {"config", config_json(cfg)},
          {"steps_accepted", tr.steps_accepted},
          {"steps_rejected", tr.steps_rejected},
          {"finite_time_blowup", tr.finite_time_blowup},
          {"times", tr.times},
          {"states", states}};
}

inline json trace_json(const DiscreteTrace& tr, const SimConfig& cfg) {
  json states = json::array();
  for (const auto& s : tr.states) {
    json row = json::array();
    for (Eigen::Index k = 0; k < s.size(); ++k) row.push_back(s(k));
    states.push_back(std::move(row));
  }
  return {{"type", "iteration"},
          {"verdict", verdict_name(tr.verdict)},
          {"config", config_json(cfg)},
          {"degraded_to_float", tr.degraded_to_float},
          {"states", states}};
}

}  // namespace njl
