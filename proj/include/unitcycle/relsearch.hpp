#pragma once

// 4-term vanishing signed sums of prime-power products: the combinatorial
// core. A set of primes admits a 4-cycle iff e1*t1 + e2*t2 + e3*t3 + e4*t4 = 0
// has a solution with no zero proper subsum.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"
#include "unitcycle/sring.hpp"

namespace unitcycle {

enum class SearchMode { linear, npower, general };

struct SearchConfig {
  SearchMode mode = SearchMode::linear;
  unsigned bound = 1;  // largest exponent allowed on any prime
  std::size_t term_ceiling = 2'000'000;
  std::size_t pair_ceiling = 60'000'000;
  unsigned workers = 1;

  static SearchConfig linear() { return {}; }
  static SearchConfig npower(unsigned n) {
    if (n < 1) throw invalid_input("npower mode needs n >= 1");
    SearchConfig c;
    c.mode = n == 1 ? SearchMode::linear : SearchMode::npower;
    c.bound = n;
    return c;
  }
  static SearchConfig general(unsigned b) {
    SearchConfig c;
    c.mode = SearchMode::general;
    c.bound = b;
    return c;
  }

  /// "linear", "npower:N" or "general:B".
  static SearchConfig parse(std::string_view text) {
    if (text == "linear") return linear();
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
      const auto head = text.substr(0, colon);
      const BigInt n = parse_bigint(text.substr(colon + 1));
      if (n < 0 || n > 64) throw invalid_input("mode exponent out of range: " + std::string(text));
      if (head == "npower") return npower(static_cast<unsigned>(n.get_ui()));
      if (head == "general") return general(static_cast<unsigned>(n.get_ui()));
    }
    throw invalid_input("unknown mode '" + std::string(text) + "' (expected linear, npower:N or general:B)");
  }

  std::string to_string() const {
    switch (mode) {
      case SearchMode::linear: return "linear";
      case SearchMode::npower: return "npower:" + std::to_string(bound);
      case SearchMode::general: return "general:" + std::to_string(bound);
    }
    return "?";
  }
};

/// Canonical 4-term relation: values sorted by descending |value| then
/// descending value, global sign chosen so the first value is positive.
struct Relation {
  InversionSet ring;
  std::array<UnitTerm, 4> terms;
  std::array<BigInt, 4> values;

  friend bool operator==(const Relation& a, const Relation& b) { return a.ring == b.ring && a.values == b.values; }
};

namespace detail {

inline BigInt magnitude(const BigInt& v) { return abs(v); }
inline std::int64_t magnitude(std::int64_t v) { return v < 0 ? -v : v; }

template <class V>
bool canonical_before(const V& a, const V& b) {
  const auto ma = magnitude(a);
  const auto mb = magnitude(b);
  if (ma != mb) return ma > mb;
  return a > b;
}

template <class V>
void canonicalize(std::array<V, 4>& q) {
  std::sort(q.begin(), q.end(), canonical_before<V>);
  if (q[0] < 0) {
    for (auto& v : q) v = -v;
    std::sort(q.begin(), q.end(), canonical_before<V>);
  }
}

}  // namespace detail

/// Sorts and sign-normalizes in place. Idempotent.
inline void canonicalize(std::array<BigInt, 4>& values) { detail::canonicalize(values); }

/// True iff some nonempty proper subset of the four values sums to zero.
inline bool has_zero_proper_subsum(std::span<const BigInt, 4> v) {
  for (const auto& x : v)
    if (x == 0) throw invalid_input("has_zero_proper_subsum: values must be nonzero");
  const bool total_zero = v[0] + v[1] + v[2] + v[3] == 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[i] + v[j] == 0) return true;
  // With total zero a vanishing triple leaves a vanishing singleton, so pairs suffice.
  if (total_zero) return false;
  for (int skip = 0; skip < 4; ++skip) {
    BigInt s = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) s += v[i];
    if (s == 0) return true;
  }
  return false;
}

/// Builds a canonical Relation from four signed values. Each value must be a
/// product of nonnegative powers of the ring's primes.
inline Relation make_relation(const InversionSet& ring, std::array<BigInt, 4> values) {
  for (const auto& v : values)
    if (v == 0) throw invalid_input("relation values must be nonzero");
  if (values[0] + values[1] + values[2] + values[3] != 0) throw invalid_input("relation values do not sum to zero");
  if (has_zero_proper_subsum(values)) throw invalid_input("relation has a zero proper subsum");
  canonicalize(values);
  Relation rel;
  rel.ring = ring;
  rel.values = values;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto f = factor_over(values[i], ring.primes());
    if (f.cofactor != 1)
      throw invalid_input("relation value " + to_string(values[i]) + " is not a product of the ring's primes");
    rel.terms[i].sign = sgn(values[i]) < 0 ? -1 : 1;
    rel.terms[i].exponents.assign(f.exponents.begin(), f.exponents.end());
  }
  return rel;
}

/// True if the relation satisfies every canonical-form invariant.
inline bool is_canonical_relation(const Relation& rel) {
  const auto& v = rel.values;
  for (const auto& x : v)
    if (x == 0) return false;
  if (v[0] + v[1] + v[2] + v[3] != 0 || has_zero_proper_subsum(v) || v[0] < 0) return false;
  auto copy = v;
  canonicalize(copy);
  if (copy != v) return false;
  for (std::size_t i = 0; i < 4; ++i)
    if (term_value(rel.terms[i], rel.ring) != BigRational(v[i])) return false;
  return true;
}

/// All products prod p_i^{a_i} with 0 <= a_i <= bound, ascending.
inline std::vector<BigInt> exponent_products(const InversionSet& s, unsigned bound, std::size_t ceiling) {
  BigInt count = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    count *= bound + 1;
    if (count > ceiling)
      throw search_too_large("search too large: (" + std::to_string(bound) + "+1)^" + std::to_string(s.size()) +
                             " terms exceeds ceiling " + std::to_string(ceiling));
  }
  std::vector<BigInt> out{BigInt(1)};
  for (const BigInt& p : s.primes()) {
    std::vector<BigInt> next;
    next.reserve(out.size() * (bound + 1));
    for (const BigInt& base : out) {
      BigInt v = base;
      for (unsigned e = 0; e <= bound; ++e) {
        next.push_back(v);
        v *= p;
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

template <class V>
struct PairSum {
  V sum;
  V first;
  V second;
};

// Meet in the middle over positive-sum pairs. The signed term set is closed
// under negation, so a pair summing to -s is the negation of a pair summing
// to s: every zero 4-sum without a vanishing pair is {a, b, -c, -d} with
// a + b = c + d = s > 0 and {a, b} != {c, d}. Distinct pairs with equal sum
// never share a value, so no cross pair vanishes either.
template <class V>
std::vector<std::array<V, 4>> mitm_relations(const std::vector<V>& terms, unsigned workers) {
  std::vector<PairSum<V>> pairs;
  pairs.reserve(terms.size() * terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      pairs.push_back({terms[i] + terms[j], terms[i], terms[j]});
      if (j < i) pairs.push_back({terms[i] - terms[j], terms[i], -terms[j]});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const PairSum<V>& a, const PairSum<V>& b) { return a.sum < b.sum; });

  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t lo = 0; lo < pairs.size();) {
    std::size_t hi = lo + 1;
    while (hi < pairs.size() && pairs[hi].sum == pairs[lo].sum) ++hi;
    if (hi - lo >= 2) groups.emplace_back(lo, hi);
    lo = hi;
  }

  auto scan = [&](std::size_t shard, std::size_t shards, std::vector<std::array<V, 4>>& out) {
    for (std::size_t g = shard; g < groups.size(); g += shards) {
      const auto [lo, hi] = groups[g];
      for (std::size_t x = lo; x < hi; ++x) {
        for (std::size_t y = x + 1; y < hi; ++y) {
          std::array<V, 4> q{pairs[x].first, pairs[x].second, -pairs[y].first, -pairs[y].second};
          canonicalize(q);
          out.push_back(std::move(q));
        }
      }
    }
  };

  std::vector<std::array<V, 4>> found;
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(workers, groups.size()));
  if (shards == 1) {
    scan(0, 1, found);
  } else {
    std::vector<std::vector<std::array<V, 4>>> partial(shards);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < shards; ++w) pool.emplace_back([&, w] { scan(w, shards, partial[w]); });
    }
    for (auto& part : partial) found.insert(found.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

inline bool fits_fast_path(const std::vector<BigInt>& terms) {
  static const BigInt limit = BigInt(1) << 61;
  return terms.empty() || terms.back() < limit;
}

}  // namespace detail

/// Canonical value tuples of every relation in `cfg`, lexicographically ordered.
/// This is the counting path used by the survey; find_relations wraps it.
inline std::vector<std::array<BigInt, 4>> find_relation_values(const InversionSet& s, const SearchConfig& cfg) {
  if (s.empty()) throw invalid_input("find_relations: inversion set must be nonempty");
  const std::vector<BigInt> terms = exponent_products(s, cfg.bound, cfg.term_ceiling);
  const double pair_count = static_cast<double>(terms.size()) * static_cast<double>(terms.size());
  if (pair_count > static_cast<double>(cfg.pair_ceiling))
    throw search_too_large("search too large: " + std::to_string(terms.size()) + " terms give more than " +
                           std::to_string(cfg.pair_ceiling) + " pair sums");
  std::vector<std::array<BigInt, 4>> out;
  if (detail::fits_fast_path(terms)) {
    std::vector<std::int64_t> small;
    small.reserve(terms.size());
    for (const auto& t : terms) small.push_back(t.get_si());
    for (const auto& q : detail::mitm_relations(small, cfg.workers)) {
      out.push_back({BigInt(static_cast<long>(q[0])), BigInt(static_cast<long>(q[1])), BigInt(static_cast<long>(q[2])),
                     BigInt(static_cast<long>(q[3]))});
    }
  } else {
    out = detail::mitm_relations(terms, cfg.workers);
  }
  // Canonical order on tuples is numeric lexicographic; the int64 path already
  // sorted that way, the BigInt path too.
  return out;
}

/// Complete duplicate-free list of canonical relations over `s` within `cfg`.
inline std::vector<Relation> find_relations(const InversionSet& s, const SearchConfig& cfg) {
  std::vector<Relation> out;
  for (auto& values : find_relation_values(s, cfg)) out.push_back(make_relation(s, values));
  return out;
}

struct AdmitResult {
  bool admits = false;
  std::optional<Relation> witness;  // lexicographically smallest canonical relation
};

/// `admits == false` only proves avoidance within cfg's exponent bound.
inline AdmitResult admits_4cycle(const InversionSet& s, const SearchConfig& cfg) {
  auto values = find_relation_values(s, cfg);
  if (values.empty()) return {};
  return {true, make_relation(s, values.front())};
}

/// p3 - p2 - p2 + p1 = 0 for primes in arithmetic progression.
inline Relation ap_relation(const BigInt& p1, const BigInt& p2, const BigInt& p3) {
  if (!(p1 < p2 && p2 < p3)) throw invalid_input("ap_relation: need p1 < p2 < p3");
  if (p2 - p1 != p3 - p2) throw invalid_input("ap_relation: primes are not in arithmetic progression");
  return make_relation(InversionSet({p1, p2, p3}), {p3, -p2, -p2, p1});
}

struct DoubletonFamily {
  enum class Kind { twin, pn_minus_2, two_p_plus_1 } kind = Kind::twin;
  unsigned n = 1;

  static DoubletonFamily twin() { return {Kind::twin, 1}; }
  static DoubletonFamily pn_minus_2(unsigned n) { return {Kind::pn_minus_2, n}; }
  static DoubletonFamily two_p_plus_1() { return {Kind::two_p_plus_1, 1}; }
};

/// Explicit relations for {p, p+2}, {p, p^n - 2} and {p, 2p + 1}.
inline Relation doubleton_family(const BigInt& p, DoubletonFamily family) {
  if (!is_probable_prime(p)) throw invalid_input("doubleton_family: " + to_string(p) + " is not prime");
  BigInt partner;
  std::array<BigInt, 4> values;
  switch (family.kind) {
    case DoubletonFamily::Kind::twin:
      partner = p + 2;
      values = {partner, BigInt(-1), BigInt(-1), BigInt(-p)};
      break;
    case DoubletonFamily::Kind::pn_minus_2: {
      if (family.n < 1) throw invalid_input("doubleton_family: n must be >= 1");
      const BigInt pn = pow(p, family.n);
      partner = pn - 2;
      values = {partner, BigInt(1), BigInt(1), BigInt(-pn)};
      break;
    }
    case DoubletonFamily::Kind::two_p_plus_1:
      partner = 2 * p + 1;
      values = {partner, BigInt(-p), BigInt(-p), BigInt(-1)};
      break;
  }
  if (!is_probable_prime(partner) || partner == p)
    throw invalid_input("doubleton_family: partner " + to_string(partner) + " is not a distinct prime; family inapplicable");
  std::vector<BigInt> ring{p, partner};
  std::sort(ring.begin(), ring.end());
  return make_relation(InversionSet(std::move(ring)), values);
}

/// max|a_i| <= C * rad(a_1 a_2 a_3 a_4)^(3 + eps) after dividing out the gcd,
/// decided exactly: with eps = a/b and C = c/d, compare
/// max^b * d^b against c^b * rad^(3b + a).
inline bool check_bb_inequality(const Relation& rel, const BigRational& c, const BigRational& epsilon) {
  if (c <= 0) throw invalid_input("check_bb_inequality: C must be positive");
  if (epsilon < 0) throw invalid_input("check_bb_inequality: epsilon must be nonnegative");
  BigInt g = 0;
  for (const auto& v : rel.values) g = gcd(g, v);
  std::array<BigInt, 4> reduced;
  BigInt largest = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    reduced[i] = rel.values[i] / g;
    if (abs(reduced[i]) > largest) largest = abs(reduced[i]);
  }
  const BigInt rad = radical(reduced, rel.ring.primes());
  const unsigned long eb = epsilon.get_den().get_ui();
  const unsigned long ea = epsilon.get_num().get_ui();
  const BigInt lhs = pow(largest, eb) * pow(BigInt(c.get_den()), eb);
  const BigInt rhs = pow(BigInt(c.get_num()), eb) * pow(rad, 3 * eb + ea);
  return lhs <= rhs;
}

/// Residues left by 1 +- p^b1 +- p^b2 +- p^b3 = 0 modulo p once the terms with
/// b_i > 0 vanish. Sign/zero patterns that force a zero proper subsum (a -1
/// against the leading 1) are discarded; the all-units pattern is not a
/// relation. A singleton {p} is obstructed iff none of the residues is 0 mod p.
struct SingletonObstruction {
  BigInt prime;
  std::vector<long> residues;  // sorted, distinct integer residues before reduction
  bool holds = false;          // no residue vanishes modulo p
};

inline SingletonObstruction singleton_mod_obstruction(const BigInt& p) {
  if (!is_probable_prime(p)) throw invalid_input("singleton_mod_obstruction: " + to_string(p) + " is not prime");
  SingletonObstruction out;
  out.prime = p;
  for (unsigned unit_mask = 0; unit_mask < 8; ++unit_mask) {      // which b_i are 0
    for (unsigned sign_mask = 0; sign_mask < 8; ++sign_mask) {    // which signs are negative
      if (unit_mask == 7) continue;  // 1 +- 1 +- 1 +- 1 is never a valid relation
      long residue = 1;
      bool trivial = false;
      for (unsigned i = 0; i < 3; ++i) {
        if ((unit_mask >> i & 1U) == 0) continue;
        const bool negative = (sign_mask >> i & 1U) != 0;
        if (negative) trivial = true;  // 1 + (-1) vanishes
        residue += negative ? -1 : 1;
      }
      if (!trivial) out.residues.push_back(residue);
    }
  }
  std::sort(out.residues.begin(), out.residues.end());
  out.residues.erase(std::unique(out.residues.begin(), out.residues.end()), out.residues.end());
  out.holds = std::none_of(out.residues.begin(), out.residues.end(), [&](long r) { return BigInt(r) % p == 0; });
  return out;
}

/// "3 = 1 + 1 + 1" style: positive terms on the left, negated negatives on the right.
inline std::string relation_equation(const Relation& rel) {
  std::string lhs, rhs;
  for (const auto& v : rel.values) {
    std::string& side = v > 0 ? lhs : rhs;
    if (!side.empty()) side += " + ";
    side += to_string(abs(v));
  }
  return lhs + " = " + rhs;
}

}  // namespace unitcycle
