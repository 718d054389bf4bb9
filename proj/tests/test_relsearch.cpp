#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support/brute_force.hpp"
#include "unitcycle/relsearch.hpp"

using namespace unitcycle;
using Quad = std::array<BigInt, 4>;

namespace {

std::set<Quad> as_set(const std::vector<Quad>& v) { return {v.begin(), v.end()}; }

bool contains(const std::vector<Quad>& v, const Quad& q) { return std::find(v.begin(), v.end(), q) != v.end(); }

const std::vector<long> kSmallPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

}  // namespace

TEST_CASE("zero proper subsums") {
  CHECK(has_zero_proper_subsum(Quad{1, -1, 1, -1}));
  CHECK_FALSE(has_zero_proper_subsum(Quad{7, -1, -1, -5}));
  CHECK(has_zero_proper_subsum(Quad{5, -5, 1, -1}));
  CHECK(has_zero_proper_subsum(Quad{1, 2, -3, 7}));
  CHECK_THROWS_AS(has_zero_proper_subsum(Quad{0, 1, -1, 2}), invalid_input);
}

TEST_CASE("subsum filter agrees with exhaustive subset check") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20'000; ++i) {
    Quad q;
    for (auto& v : q) {
      long x = 0;
      while (x == 0) x = static_cast<long>(rng() % 13) - 6;
      v = x;
    }
    if (i % 2) q[3] = -(q[0] + q[1] + q[2]);
    if (q[3] == 0) continue;
    REQUIRE(has_zero_proper_subsum(q) == brute::some_subset_vanishes(q));
  }
}

TEST_CASE("canonicalization is idempotent and collapses permutations and sign") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5000; ++i) {
    Quad q;
    for (auto& v : q) v = static_cast<long>(rng() % 41) - 20;
    Quad c = q;
    canonicalize(c);
    Quad again = c;
    canonicalize(again);
    REQUIRE(again == c);
    REQUIRE(c == brute::normal_form(q));
    // Global sign only collapses when no value meets its negative.
    bool opposite = false;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) opposite = opposite || q[a] + q[b] == 0;
    if (opposite) continue;
    Quad flipped = q;
    for (auto& v : flipped) v = -v;
    std::shuffle(flipped.begin(), flipped.end(), rng);
    canonicalize(flipped);
    REQUIRE(flipped == c);
  }
}

TEST_CASE("search config parsing") {
  CHECK(SearchConfig::parse("linear").to_string() == "linear");
  CHECK(SearchConfig::parse("npower:1").mode == SearchMode::linear);
  CHECK(SearchConfig::parse("npower:3").to_string() == "npower:3");
  CHECK(SearchConfig::parse("general:8").bound == 8);
  CHECK_THROWS_AS(SearchConfig::parse("cubic"), invalid_input);
  CHECK_THROWS_AS(SearchConfig::parse("npower:0"), invalid_input);
  CHECK_THROWS_AS(SearchConfig::parse("general:x"), invalid_input);
}

TEST_CASE("find_relations examples") {
  CHECK(contains(find_relation_values({3}, SearchConfig::general(1)), Quad{3, -1, -1, -1}));
  CHECK(find_relation_values({5}, SearchConfig::general(10)).empty());
  CHECK(contains(find_relation_values({5, 7}, SearchConfig::linear()), Quad{7, -5, -1, -1}));
  CHECK(find_relation_values({5, 17, 257}, SearchConfig::linear()).empty());
  CHECK(find_relation_values({3}, SearchConfig::general(3)) ==
        std::vector<Quad>{{3, -1, -1, -1}, {9, -3, -3, -3}, {27, -9, -9, -9}});
  CHECK(find_relation_values({2}, SearchConfig::general(8)).front() == Quad{4, -2, -1, -1});
  CHECK(find_relation_values({5, 23}, SearchConfig::npower(2)) == std::vector<Quad>{{25, -23, -1, -1}, {575, -529, -23, -23}});
  CHECK_THROWS_AS(find_relation_values(InversionSet(), SearchConfig::linear()), invalid_input);
}

TEST_CASE("admits_4cycle examples") {
  auto r = admits_4cycle({3}, SearchConfig::general(3));
  REQUIRE(r.admits);
  CHECK(r.witness->values == Quad{3, -1, -1, -1});
  CHECK(relation_equation(*r.witness) == "3 = 1 + 1 + 1");
  r = admits_4cycle({5, 11}, SearchConfig::linear());
  REQUIRE(r.admits);
  CHECK(r.witness->values == Quad{11, -5, -5, -1});
  r = admits_4cycle({5, 17, 257}, SearchConfig::linear());
  CHECK_FALSE(r.admits);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("every returned relation is canonical") {
  for (const auto& s : {InversionSet{2, 3}, InversionSet{3, 5, 7}, InversionSet{37, 73, 83, 127, 157}}) {
    for (const auto& rel : find_relations(s, SearchConfig::linear())) {
      CHECK(is_canonical_relation(rel));
      const auto& v = rel.values;
      CHECK(v[0] + v[1] + v[2] + v[3] == 0);
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(v[i] + v[j] != 0);
      CHECK(v[0] > 0);
    }
  }
}

TEST_CASE("meet-in-the-middle matches brute force on random configurations") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 1 + rng() % 2;
    std::vector<long> primes;
    while (primes.size() < n) {
      const long p = kSmallPrimes[rng() % kSmallPrimes.size()];
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    const unsigned bound = 1 + static_cast<unsigned>(rng() % 4);
    std::vector<BigInt> big(primes.begin(), primes.end());
    const InversionSet s(big);
    SearchConfig cfg = rng() % 2 ? SearchConfig::general(bound) : SearchConfig::npower(bound);
    cfg.workers = 1 + static_cast<unsigned>(rng() % 3);
    const auto fast = find_relation_values(s, cfg);
    INFO("S = " << s.to_string() << ", B = " << bound);
    REQUIRE(std::is_sorted(fast.begin(), fast.end()));
    REQUIRE(as_set(fast).size() == fast.size());
    REQUIRE(as_set(fast) == brute::relations(primes, bound));
  }
}

TEST_CASE("large terms take the arbitrary-precision path and agree with brute force") {
  const std::vector<long> primes{5, 79, 468079};
  const InversionSet s({5, 79, 468079});
  SearchConfig cfg = SearchConfig::npower(4);
  const auto values = find_relation_values(s, cfg);
  CHECK(as_set(values) == brute::relations(primes, 4));
  const InversionSet big({BigInt("198359290373"), BigInt("595077871121")});
  CHECK(find_relation_values(big, SearchConfig::general(3)).empty());
}

TEST_CASE("results do not depend on the worker count") {
  const InversionSet s{2, 3, 5, 7};
  auto cfg = SearchConfig::general(3);
  const auto one = find_relation_values(s, cfg);
  for (unsigned w : {2U, 3U, 8U}) {
    cfg.workers = w;
    CHECK(find_relation_values(s, cfg) == one);
  }
}

TEST_CASE("mode monotonicity") {
  for (const auto& s : {InversionSet{2, 3}, InversionSet{5, 7}, InversionSet{3, 11}, InversionSet{2, 5, 7}}) {
    const auto lin = as_set(find_relation_values(s, SearchConfig::linear()));
    const auto np2 = as_set(find_relation_values(s, SearchConfig::npower(2)));
    const auto g3 = as_set(find_relation_values(s, SearchConfig::general(3)));
    CHECK(std::includes(np2.begin(), np2.end(), lin.begin(), lin.end()));
    CHECK(std::includes(g3.begin(), g3.end(), np2.begin(), np2.end()));
  }
}

TEST_CASE("singletons admit relations only for 2 and 3") {
  CHECK_FALSE(find_relation_values({2}, SearchConfig::general(8)).empty());
  CHECK_FALSE(find_relation_values({3}, SearchConfig::general(8)).empty());
  for (long p = 5; p <= 97; ++p) {
    if (!is_probable_prime(BigInt(p))) continue;
    INFO("p = " << p);
    CHECK(find_relation_values(InversionSet{p}, SearchConfig::general(8)).empty());
    CHECK(singleton_mod_obstruction(p).holds);
  }
  CHECK_FALSE(singleton_mod_obstruction(2).holds);
  CHECK_FALSE(singleton_mod_obstruction(3).holds);
  CHECK(singleton_mod_obstruction(5).residues == std::vector<long>{1, 2, 3});
}

TEST_CASE("arithmetic progressions") {
  auto r = ap_relation(3, 5, 7);
  Quad expect{7, -5, -5, 3};
  canonicalize(expect);
  CHECK(r.values == expect);
  r = ap_relation(3, 7, 11);
  expect = {11, -7, -7, 3};
  canonicalize(expect);
  CHECK(r.values == expect);
  CHECK_THROWS_AS(ap_relation(3, 5, 11), invalid_input);
  for (long a = 2; a < 200; a += 2)
    for (long p = 3; p < 200; p += 2) {
      if (!is_probable_prime(BigInt(p)) || !is_probable_prime(BigInt(p + a)) || !is_probable_prime(BigInt(p + 2 * a)))
        continue;
      const auto rel = ap_relation(p, p + a, p + 2 * a);
      CHECK_FALSE(has_zero_proper_subsum(rel.values));
      CHECK(is_canonical_relation(rel));
    }
}

TEST_CASE("doubleton families") {
  Quad expect{7, -1, -1, -5};
  canonicalize(expect);
  CHECK(doubleton_family(5, DoubletonFamily::twin()).values == expect);
  expect = {23, 1, 1, -25};
  canonicalize(expect);
  const auto pn = doubleton_family(5, DoubletonFamily::pn_minus_2(2));
  CHECK(pn.values == expect);
  CHECK(pn.ring == InversionSet{5, 23});
  expect = {11, -5, -5, -1};
  canonicalize(expect);
  CHECK(doubleton_family(5, DoubletonFamily::two_p_plus_1()).values == expect);
  CHECK_THROWS_AS(doubleton_family(7, DoubletonFamily::twin()), invalid_input);
  CHECK_THROWS_AS(doubleton_family(4, DoubletonFamily::twin()), invalid_input);
}

TEST_CASE("bounded-radical inequality") {
  const auto r3 = make_relation({3}, {3, -1, -1, -1});
  const auto r57 = make_relation({5, 7}, {7, -1, -1, -5});
  CHECK(check_bb_inequality(r3, 1, 1));
  CHECK(check_bb_inequality(r57, 1, 1));
  CHECK_FALSE(check_bb_inequality(r3, BigRational(1, 28), 0));
  CHECK(check_bb_inequality(r3, BigRational(1, 9), BigRational(1, 2)));   // 3 <= 3^3.5 / 9
  CHECK_FALSE(check_bb_inequality(r3, BigRational(1, 27), BigRational(1, 2)));  // 3 > 3^3.5 / 27
  CHECK(check_bb_inequality(r3, BigRational(1, 9), 1));                           // 3 <= 81 / 9
  const auto scaled = make_relation({3}, {9, -3, -3, -3});
  CHECK(check_bb_inequality(scaled, BigRational(1, 9), 1));
  CHECK_THROWS_AS(check_bb_inequality(r3, 0, 1), invalid_input);
  CHECK_THROWS_AS(check_bb_inequality(r3, 1, -1), invalid_input);
}

TEST_CASE("make_relation rejects invalid input") {
  CHECK_THROWS_AS(make_relation({3}, {3, -1, -1, 0}), invalid_input);
  CHECK_THROWS_AS(make_relation({3}, {3, -1, -1, -2}), invalid_input);
  CHECK_THROWS_AS(make_relation({5}, {5, -5, 1, -1}), invalid_input);
  CHECK_THROWS_AS(make_relation({5}, {7, -5, -1, -1}), invalid_input);
  const auto r = make_relation({5, 7}, {-1, -1, 7, -5});
  CHECK(r.values == Quad{7, -5, -1, -1});
  CHECK(r.terms[0].exponents == std::vector<long>{0, 1});
  CHECK(r.terms[1].sign == -1);
}

TEST_CASE("ceilings") {
  SearchConfig cfg = SearchConfig::general(4);
  cfg.term_ceiling = 10;
  CHECK_THROWS_AS(find_relation_values({2, 3}, cfg), search_too_large);
  cfg = SearchConfig::general(100);
  cfg.pair_ceiling = 1000;
  CHECK_THROWS_AS(find_relation_values({2, 3}, cfg), search_too_large);
}
