#pragma once

// JSON and TSV/CSV serialization for the library's result types.

#include <json.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vdc/construction.hpp"
#include "vdc/cosine_poly.hpp"
#include "vdc/error.hpp"
#include "vdc/gamma.hpp"
#include "vdc/numeric.hpp"
#include "vdc/recurrence.hpp"
#include "vdc/tau.hpp"
#include "vdc/weights.hpp"

namespace vdc::io {

using json = nlohmann::json;

// Integers that fit in 64 bits are emitted as numbers, larger ones as strings.
inline json big_to_json(const BigInt& v) {
  if (v >= BigInt(std::numeric_limits<std::int64_t>::min()) && v <= BigInt(std::numeric_limits<std::int64_t>::max())) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline BigInt big_from_json(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  throw DomainError("expected an integer");
}

// Rounds every floating-point value in place to 12 significant digits.
inline void round_floats(json& j) {
  if (j.is_number_float()) {
    j = sig12(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& v : j) round_floats(v);
  }
}

inline json to_json(const CosinePoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back(json::array({t.freq, t.coeff}));
  return {{"a0", p.a0()}, {"terms", std::move(terms)}};
}

inline CosinePoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a0") || !j.contains("terms")) {
    throw DomainError("polynomial JSON needs a0 and terms");
  }
  std::vector<CosineTerm> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2) throw DomainError("polynomial term must be [freq, coeff]");
    terms.push_back({t[0].get<u64>(), t[1].get<double>()});
  }
  return CosinePoly(j.at("a0").get<double>(), std::move(terms));
}

inline json to_json(const SchemeParams& p) {
  json j = {{"delta", p.delta}, {"p_minus", p.p_minus}, {"p_plus", p.p_plus}, {"l", p.l}};
  j["d_exceptional"] = p.d_exceptional ? json(*p.d_exceptional) : json(nullptr);
  return j;
}

inline SchemeParams params_from_json(const json& j) {
  SchemeParams p;
  p.delta = j.value("delta", 0.5);
  p.p_minus = j.at("p_minus").get<u64>();
  p.p_plus = j.at("p_plus").get<u64>();
  p.l = j.at("l").get<u64>();
  if (j.contains("d_exceptional") && !j.at("d_exceptional").is_null()) p.d_exceptional = j.at("d_exceptional").get<u64>();
  return p;
}

inline json to_json(const WeightScheme& s, const CancellationReport& c) {
  json members = json::array();
  for (const auto& m : s.members) {
    members.push_back({{"d", m.d}, {"w_num", big_to_json(numerator(m.w))}, {"w_den", big_to_json(denominator(m.w))}});
  }
  return {{"params", to_json(s.params)},
          {"d_star", s.d_star},
          {"members", std::move(members)},
          {"cancellation",
           {{"min_num", big_to_json(numerator(c.min_value))},
            {"min_den", big_to_json(denominator(c.min_value))},
            {"min_value", c.min_value.convert_to<double>()},
            {"argmin_q", c.argmin_q},
            {"passed", c.passed},
            {"q_checked", c.q_checked}}}};
}

// Scheme members from a weights JSON document, or from {"params": {...}}.
inline std::vector<WeightedModulus> members_from_json(const json& j) {
  if (j.contains("members")) {
    std::vector<WeightedModulus> out;
    for (const auto& m : j.at("members")) {
      WeightedModulus wm;
      wm.d = m.at("d").get<u64>();
      if (m.contains("w")) {
        wm.w = m.at("w").get<double>();
      } else {
        const Rational w(big_from_json(m.at("w_num")), big_from_json(m.at("w_den")));
        wm.w = w.convert_to<double>();
      }
      out.push_back(wm);
    }
    return out;
  }
  if (j.contains("params")) return weighted_moduli(build_scheme(params_from_json(j.at("params"))));
  throw DomainError("scheme JSON needs members or params");
}

inline json to_json(const ErrorDiagnostics& e) { return {{"e1", e.e1}, {"e2", e.e2}, {"e3", e.e3}}; }

inline json to_json(const CertifiedMin& c) {
  return {{"grid_min", c.grid_min},       {"grid_argmin", c.grid_argmin},
          {"lipschitz", c.lipschitz},     {"certified_lower", c.certified_lower},
          {"grid_step", c.grid_step},     {"grid_size", c.grid_size}};
}

inline json to_json(const ConstructionResult& r) {
  json diags = json::array();
  for (const auto& d : r.diagnostics) {
    json e = to_json(d.e);
    e["d"] = d.d;
    e["N"] = d.N;
    diags.push_back(std::move(e));
  }
  return {{"polynomial", to_json(r.polynomial)},
          {"certified_floor", r.certified_floor},
          {"a0_bound", r.a0_bound},
          {"max_frequency", r.max_frequency},
          {"certificate", to_json(r.certificate)},
          {"diagnostics", std::move(diags)},
          {"diagnostics_note", "shape diagnostics with implied constants set to 1; not rigorous bounds"}};
}

inline json to_json(const GammaBracket& b) {
  return {{"n", b.n},
          {"lower", b.lower},
          {"upper", b.upper},
          {"witness", to_json(b.witness)},
          {"grid_final", b.grid_final},
          {"iterations", b.iterations},
          {"converged", b.converged}};
}

inline json to_json(const EtaResult& e) {
  return {{"n", e.n},
          {"value", e.value},
          {"value_num", e.value_num},
          {"value_den", e.value_den},
          {"upper", e.upper},
          {"argmax_theta", {{"numerator", e.argmax_num}, {"denominator", e.argmax_den}}},
          {"method", e.method == EtaMethod::exact ? "exact" : "grid-bracket"}};
}

inline json to_json(const AvoidingSetResult& a) {
  return {{"window", a.window},
          {"forbidden", a.forbidden},
          {"best_set", a.best_set},
          {"size", a.best_set.size()},
          {"density", {{"numerator", a.density_num}, {"denominator", a.density_den}}},
          {"density_value", static_cast<double>(a.density_num) / static_cast<double>(a.density_den)},
          {"optimal", a.optimal}};
}

inline json to_json(const PeriodicSet& p) {
  return {{"modulus", p.modulus},
          {"residues", p.residues},
          {"density", {{"numerator", p.density_num}, {"denominator", p.density_den}}},
          {"density_value", static_cast<double>(p.density_num) / static_cast<double>(p.density_den)}};
}

inline json to_json(const AvoidanceCheck& c) {
  json j = {{"passed", c.passed}};
  if (!c.passed) j["counterexample"] = {{"difference", c.difference}, {"x", c.x}, {"y", c.y}};
  return j;
}

// Two-column (theta, value) dump over i/grid_size, i = 0..grid_size/2.
inline void write_grid_tsv(std::ostream& os, const CosinePoly& p, u64 grid_size) {
  const std::vector<double> vals = evaluate_half_grid(p, grid_size);
  os << "theta\tvalue\n";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    os << fmt12(static_cast<double>(i) / static_cast<double>(grid_size)) << '\t' << fmt12(vals[i]) << '\n';
  }
}

}  // namespace vdc::io
