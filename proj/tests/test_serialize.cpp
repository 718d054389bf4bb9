#include <variant>

#include "catch_amalgamated.hpp"
#include "unitcycle/unitcycle.hpp"

using namespace unitcycle;

TEST_CASE("relation JSON round trip") {
  for (const auto& rel : find_relations({5, 7}, SearchConfig::linear())) {
    const json j = relation_to_json(rel);
    const Relation back = relation_from_json(json::parse(j.dump()));
    CHECK(back.values == rel.values);
    CHECK(back.ring == rel.ring);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.terms[i] == rel.terms[i]);
  }
  const auto j = relation_to_json(make_relation({3}, {3, -1, -1, -1}));
  CHECK(j["equation"] == "3 = 1 + 1 + 1");
  CHECK(j["terms"][0] == json{{"sign", 1}, {"exponents", {1}}, {"value", "3"}});
}

TEST_CASE("relation JSON is re-validated") {
  json j = relation_to_json(make_relation({3}, {3, -1, -1, -1}));
  j["terms"][0]["value"] = "9";
  CHECK_THROWS_AS(relation_from_json(j), invalid_input);
  j = relation_to_json(make_relation({3}, {3, -1, -1, -1}));
  j["terms"][1]["exponents"] = {1};
  j["terms"][1]["value"] = "-3";
  CHECK_THROWS_AS(relation_from_json(j), invalid_input);
  CHECK_THROWS_AS(relation_from_json(json{{"ring", {"3"}}}), invalid_input);
  const Relation bare = relation_from_json(json{{"ring", {"5", "7"}}, {"terms", {-1, 7, "-5", -1}}});
  CHECK(bare.values == std::array<BigInt, 4>{7, -5, -1, -1});
}

TEST_CASE("certificate JSON round trip") {
  const auto cert = std::get<AvoidanceCertificate>(separation_certificate({5, 17, 257}, SearchConfig::linear()));
  const auto back = certificate_from_json(json::parse(certificate_to_json(cert).dump()));
  CHECK(back.products == cert.products);
  CHECK(back.steps.size() == cert.steps.size());
  CHECK(reverify_certificate(back));
  const json q = certificate_to_json(cert)["inequalities"][0];
  CHECK(q["lhs"] == "3");
  CHECK(q["rhs"] == "5");
  CHECK(q["relation"] == "<");
  CHECK(q["pass"] == true);
}

TEST_CASE("abc report JSON round trip") {
  const auto r = abc_pair(1, 9);
  const auto back = report_from_json(json::parse(report_to_json(r).dump()));
  CHECK(back.p1 == r.p1);
  CHECK(back.p2 == r.p2);
  CHECK(back.valid());
  CHECK(reverify_report(back));
  json tampered = report_to_json(r);
  tampered["checks"][4]["inequalities"][0]["lhs"] = "1";
  CHECK_FALSE(reverify_report(report_from_json(tampered)));
}

TEST_CASE("cycle, orbit, clique and aggregate JSON round trips") {
  const auto w = lagrange_cycle_poly(std::vector<BigRational>{-10, -3, -4, -9}, {5, 7});
  const auto wb = witness_from_json(json::parse(witness_to_json(w).dump()));
  CHECK(wb.polynomial.coefficients() == w.polynomial.coefficients());
  CHECK(wb.points == w.points);
  CHECK(verify_cycle(wb).ok);
  CHECK(witness_to_json(w)["polynomial"]["coefficients"] == json{"101/7", "221/35", "-4/35", "-2/35"});

  const auto o = orbit(w.polynomial, -10, 10);
  const auto ob = orbit_from_json(json::parse(orbit_to_json(o).dump()));
  CHECK(ob.outcome == o.outcome);
  CHECK(ob.period == 4);
  CHECK(ob.trajectory == o.trajectory);

  const auto c = *unit_difference_clique({2}, 3, 4);
  const auto cb = clique_from_json(json::parse(clique_to_json(c).dump()));
  CHECK(cb.elements == c.elements);
  CHECK(verify_clique(cb));

  SurveyOptions opt;
  opt.pool = 7;
  const auto agg = survey_run(opt).aggregate;
  CHECK(aggregate_from_json(json::parse(aggregate_to_json(agg).dump())).points == agg.points);
}

TEST_CASE("malformed JSON fields") {
  CHECK_THROWS_AS(ring_from_json(json("3")), invalid_input);
  CHECK_THROWS_AS(ring_from_json(json{"4"}), invalid_input);
  CHECK_THROWS_AS(orbit_from_json(json{{"outcome", "spiral"}, {"iterations", 1}}), invalid_input);
  CHECK_THROWS_AS(inequality_from_json(json{{"lhs", "1"}}), invalid_input);
}
