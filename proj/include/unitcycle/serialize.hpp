#pragma once

// JSON forms of every result type. Big numbers travel as decimal strings so a
// third party can re-verify each inequality without trusting this library.

#include <string>
#include <vector>

#include "json.hpp"
#include "unitcycle/avoidance.hpp"
#include "unitcycle/cycles.hpp"
#include "unitcycle/lenstra.hpp"
#include "unitcycle/relsearch.hpp"
#include "unitcycle/sring.hpp"
#include "unitcycle/survey.hpp"

namespace unitcycle {

using json = nlohmann::json;

namespace detail {

inline BigInt big_from(const json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<long>());
  throw invalid_input("expected an integer or decimal string, got " + j.dump());
}

inline BigRational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return BigRational(big_from(j));
}

template <class Range>
json string_array(const Range& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw invalid_input(std::string("JSON: missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline json ring_to_json(const InversionSet& s) { return detail::string_array(s.primes()); }

inline InversionSet ring_from_json(const json& j) {
  if (!j.is_array()) throw invalid_input("JSON: ring must be an array of primes");
  std::vector<BigInt> primes;
  for (const auto& p : j) primes.push_back(detail::big_from(p));
  return InversionSet(std::move(primes));
}

/// {"sign":-1,"exponents":[1,0],"value":"-5"}
inline json term_to_json(const UnitTerm& t, const InversionSet& s) {
  return json{{"sign", t.sign}, {"exponents", t.exponents}, {"value", to_string(term_value(t, s))}};
}

inline UnitTerm term_from_json(const json& j, const InversionSet& s) {
  UnitTerm t;
  t.sign = detail::field(j, "sign").get<int>();
  t.exponents = detail::field(j, "exponents").get<std::vector<long>>();
  const BigRational value = term_value(t, s);
  if (j.contains("value") && detail::rational_from(j.at("value")) != value)
    throw invalid_input("JSON: term value " + j.at("value").dump() + " does not match its exponents");
  return t;
}

inline json relation_to_json(const Relation& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back(term_to_json(t, r.ring));
  return json{{"ring", ring_to_json(r.ring)}, {"terms", terms}, {"equation", relation_equation(r)}};
}

/// Accepts the relation_to_json form; the result is re-validated and canonical.
inline Relation relation_from_json(const json& j) {
  const InversionSet ring = ring_from_json(detail::field(j, "ring"));
  const json& terms = detail::field(j, "terms");
  if (!terms.is_array() || terms.size() != 4) throw invalid_input("JSON: a relation has exactly four terms");
  std::array<BigInt, 4> values;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!terms[i].is_object()) {  // bare integer or decimal string
      values[i] = detail::big_from(terms[i]);
      continue;
    }
    const UnitTerm t = term_from_json(terms[i], ring);
    for (long e : t.exponents)
      if (e < 0) throw invalid_input("JSON: relation exponents must be nonnegative");
    values[i] = term_value(t, ring).get_num();
  }
  return make_relation(ring, values);
}

inline json inequality_to_json(const Inequality& q) {
  return json{{"label", q.label}, {"lhs", to_string(q.lhs)}, {"relation", to_symbol(q.relation)},
              {"rhs", to_string(q.rhs)}, {"pass", q.pass}};
}

inline Inequality inequality_from_json(const json& j) {
  Inequality q;
  q.label = j.value("label", std::string());
  q.lhs = detail::big_from(detail::field(j, "lhs"));
  q.rhs = detail::big_from(detail::field(j, "rhs"));
  q.relation = comparison_from_symbol(detail::field(j, "relation").get<std::string>());
  q.pass = detail::field(j, "pass").get<bool>();
  return q;
}

inline json certificate_to_json(const AvoidanceCertificate& c) {
  json steps = json::array();
  for (const auto& q : c.steps) steps.push_back(inequality_to_json(q));
  return json{{"ring", ring_to_json(c.ring)},
              {"mode", c.mode.to_string()},
              {"products", detail::string_array(c.products)},
              {"inequalities", steps}};
}

inline AvoidanceCertificate certificate_from_json(const json& j) {
  AvoidanceCertificate c;
  c.ring = ring_from_json(detail::field(j, "ring"));
  c.mode = SearchConfig::parse(detail::field(j, "mode").get<std::string>());
  for (const auto& p : detail::field(j, "products")) c.products.push_back(detail::big_from(p));
  for (const auto& q : detail::field(j, "inequalities")) c.steps.push_back(inequality_from_json(q));
  return c;
}

inline json report_to_json(const AbcPairReport& r) {
  json checks = json::array();
  for (const auto& ch : r.checks) {
    json qs = json::array();
    for (const auto& q : ch.inequalities) qs.push_back(inequality_to_json(q));
    checks.push_back(json{{"name", ch.name}, {"pass", ch.pass}, {"inequalities", qs}});
  }
  return json{{"C", to_string(r.c)}, {"m", r.m},           {"p1", to_string(r.p1)},
              {"p2", to_string(r.p2)}, {"checks", checks}, {"valid", r.valid()}};
}

inline AbcPairReport report_from_json(const json& j) {
  AbcPairReport r;
  r.c = detail::rational_from(detail::field(j, "C"));
  r.m = detail::field(j, "m").get<unsigned>();
  r.p1 = detail::big_from(detail::field(j, "p1"));
  r.p2 = detail::big_from(detail::field(j, "p2"));
  for (const auto& ch : detail::field(j, "checks")) {
    NamedCheck n;
    n.name = detail::field(ch, "name").get<std::string>();
    n.pass = detail::field(ch, "pass").get<bool>();
    for (const auto& q : detail::field(ch, "inequalities")) n.inequalities.push_back(inequality_from_json(q));
    r.checks.push_back(std::move(n));
  }
  return r;
}

inline json polynomial_to_json(const RationalPolynomial& p) {
  return json{{"coefficients", detail::string_array(p.coefficients())}, {"expression", p.expression()}};
}

inline RationalPolynomial polynomial_from_json(const json& j) {
  std::vector<BigRational> cs;
  for (const auto& c : detail::field(j, "coefficients")) cs.push_back(detail::rational_from(c));
  return RationalPolynomial(std::move(cs));
}

inline json witness_to_json(const CycleWitness& w) {
  return json{{"ring", ring_to_json(w.ring)}, {"points", detail::string_array(w.points)},
              {"polynomial", polynomial_to_json(w.polynomial)}};
}

inline CycleWitness witness_from_json(const json& j) {
  CycleWitness w;
  w.ring = ring_from_json(detail::field(j, "ring"));
  for (const auto& x : detail::field(j, "points")) w.points.push_back(detail::rational_from(x));
  w.polynomial = polynomial_from_json(detail::field(j, "polynomial"));
  return w;
}

inline json orbit_to_json(const OrbitReport& r) {
  json out{{"outcome", to_string(r.outcome)}, {"iterations", r.iterations}, {"trajectory", detail::string_array(r.trajectory)}};
  if (r.outcome == OrbitOutcome::cycle) {
    out["preperiod"] = r.preperiod;
    out["period"] = r.period;
  }
  return out;
}

inline OrbitReport orbit_from_json(const json& j) {
  OrbitReport r;
  const auto outcome = detail::field(j, "outcome").get<std::string>();
  if (outcome == "cycle") r.outcome = OrbitOutcome::cycle;
  else if (outcome == "escaping") r.outcome = OrbitOutcome::escaping;
  else if (outcome == "no_cycle_within") r.outcome = OrbitOutcome::no_cycle_within;
  else throw invalid_input("JSON: unknown orbit outcome " + outcome);
  r.iterations = detail::field(j, "iterations").get<std::size_t>();
  r.preperiod = j.value("preperiod", std::size_t{0});
  r.period = j.value("period", std::size_t{0});
  for (const auto& x : j.value("trajectory", json::array())) r.trajectory.push_back(detail::rational_from(x));
  return r;
}

inline json clique_to_json(const CliqueWitness& w) {
  return json{{"ring", ring_to_json(w.ring)}, {"elements", detail::string_array(w.elements)}, {"size", w.size()}};
}

inline CliqueWitness clique_from_json(const json& j) {
  CliqueWitness w;
  w.ring = ring_from_json(detail::field(j, "ring"));
  for (const auto& x : detail::field(j, "elements")) w.elements.push_back(detail::rational_from(x));
  return w;
}

inline json aggregate_to_json(const ScatterAggregate& agg) {
  json pts = json::array();
  for (const auto& p : agg.points)
    pts.push_back(json{{"min_gap", to_string(p.min_gap)}, {"relation_count", p.relation_count}, {"frequency", p.frequency}});
  return json{{"points", pts}, {"total", agg.total()}};
}

inline ScatterAggregate aggregate_from_json(const json& j) {
  ScatterAggregate agg;
  for (const auto& p : detail::field(j, "points"))
    agg.points.push_back(ScatterPoint{detail::big_from(detail::field(p, "min_gap")),
                                      detail::field(p, "relation_count").get<std::size_t>(),
                                      detail::field(p, "frequency").get<std::size_t>()});
  return agg;
}

inline json row_to_json(const SurveyRow& r) {
  return json{{"primes", ring_to_json(r.primes)}, {"min_gap", to_string(r.min_gap)}, {"relation_count", r.relation_count}};
}

}  // namespace unitcycle
