#pragma once

// Certificates that an inversion set avoids 4-cycles: 3-separation of the
// product set, the explicit avoiding-set construction, and the two-prime
// construction that is conditional on the Browkin-Brzezinski inequality.

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"
#include "unitcycle/relsearch.hpp"
#include "unitcycle/sring.hpp"

namespace unitcycle {

enum class Comparison { less, less_equal, greater, greater_equal };

inline const char* to_symbol(Comparison c) {
  switch (c) {
    case Comparison::less: return "<";
    case Comparison::less_equal: return "<=";
    case Comparison::greater: return ">";
    case Comparison::greater_equal: return ">=";
  }
  return "?";
}

inline Comparison comparison_from_symbol(std::string_view s) {
  if (s == "<") return Comparison::less;
  if (s == "<=") return Comparison::less_equal;
  if (s == ">") return Comparison::greater;
  if (s == ">=") return Comparison::greater_equal;
  throw invalid_input("unknown comparison '" + std::string(s) + "'");
}

inline bool holds(const BigInt& lhs, Comparison c, const BigInt& rhs) {
  switch (c) {
    case Comparison::less: return lhs < rhs;
    case Comparison::less_equal: return lhs <= rhs;
    case Comparison::greater: return lhs > rhs;
    case Comparison::greater_equal: return lhs >= rhs;
  }
  return false;
}

/// One exact integer comparison, kept with its operands for re-verification.
struct Inequality {
  std::string label;
  BigInt lhs;
  Comparison relation = Comparison::less;
  BigInt rhs;
  bool pass = false;

  static Inequality make(std::string label, BigInt lhs, Comparison rel, BigInt rhs) {
    Inequality q{std::move(label), std::move(lhs), rel, std::move(rhs), false};
    q.pass = holds(q.lhs, q.relation, q.rhs);
    return q;
  }

  bool reverify() const { return holds(lhs, relation, rhs) == pass; }
};

// ---------------------------------------------------------------------------
// Separation certificates

struct AvoidanceCertificate {
  InversionSet ring;
  SearchConfig mode;
  std::vector<BigInt> products;    // ascending
  std::vector<Inequality> steps;  // 3 * products[i-1] < products[i]
};

/// Consecutive products that are not 3-separated. This does NOT show the set admits a 4-cycle.
struct SeparationCounterexample {
  BigInt smaller;
  BigInt larger;
};

using SeparationResult = std::variant<AvoidanceCertificate, SeparationCounterexample>;

/// Sorts all products with exponents in mode's range and checks 3 x_{i-1} < x_i.
/// Consecutive 3-separation gives x_i > 3 x_{i-1} > x_a + x_b + x_c for any three
/// smaller terms, which rules out every nontrivial 4-term vanishing sum.
inline SeparationResult separation_certificate(const InversionSet& s, const SearchConfig& mode) {
  AvoidanceCertificate cert;
  cert.ring = s;
  cert.mode = mode;
  cert.products = exponent_products(s, mode.bound, mode.term_ceiling);
  cert.steps.reserve(cert.products.size());
  for (std::size_t i = 1; i < cert.products.size(); ++i) {
    const BigInt& prev = cert.products[i - 1];
    const BigInt& cur = cert.products[i];
    auto step = Inequality::make("3*x[" + std::to_string(i - 1) + "] < x[" + std::to_string(i) + "]", 3 * prev,
                                 Comparison::less, cur);
    if (!step.pass) return SeparationCounterexample{prev, cur};
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

/// Rebuilds the product list from the ring and mode and re-checks every step.
inline bool reverify_certificate(const AvoidanceCertificate& cert) {
  std::vector<BigInt> expected;
  try {
    expected = exponent_products(cert.ring, cert.mode.bound, cert.mode.term_ceiling);
  } catch (const search_too_large&) {
    return false;
  }
  if (expected != cert.products || cert.steps.size() + 1 != std::max<std::size_t>(1, expected.size())) return false;
  for (std::size_t i = 1; i < expected.size(); ++i) {
    const Inequality& step = cert.steps[i - 1];
    if (!step.pass || !step.reverify()) return false;
    if (step.lhs != 3 * expected[i - 1] || step.rhs != expected[i] || step.relation != Comparison::less) return false;
  }
  return true;
}

/// p1 = next_prime(max(3, start)), p_j = next_prime(3 * prod_{i<j} p_i^n).
inline std::vector<BigInt> construct_avoiding_set(int k, int n, const BigInt& start = 3) {
  if (k < 1 || n < 1) throw invalid_input("construct_avoiding_set: k and n must be >= 1");
  std::vector<BigInt> primes;
  primes.push_back(next_prime(start > 3 ? start : BigInt(3)));
  BigInt product = pow(primes.back(), static_cast<unsigned long>(n));
  while (static_cast<int>(primes.size()) < k) {
    primes.push_back(next_prime(3 * product));
    product *= pow(primes.back(), static_cast<unsigned long>(n));
  }
  return primes;
}

// ---------------------------------------------------------------------------
// Two-prime ordering

namespace detail {

// For 1 <= l < m: p1^l < p2^l and 3^m p2^(l m) < p1^(l m + l), i.e. the
// k-independent form of p1^(l+k) < p1^k p2^l < (1/3) p1^(l + l/m + k).
// l = 0 is skipped: there the strict lower bound reads 1 < 1.
inline std::vector<Inequality> ordering_inequalities(const BigInt& p1, const BigInt& p2, unsigned m) {
  std::vector<Inequality> out;
  const BigInt three_m = pow(BigInt(3), m);
  for (unsigned l = 1; l < m; ++l) {
    const std::string tag = "l=" + std::to_string(l);
    out.push_back(Inequality::make("p1^l < p2^l, " + tag, pow(p1, l), Comparison::less, pow(p2, l)));
    out.push_back(Inequality::make("3^m*p2^(l*m) < p1^(l*m+l), " + tag, three_m * pow(p2, l * m), Comparison::less,
                                   pow(p1, l * m + l)));
  }
  return out;
}

inline void require_ordering_preconditions(const BigInt& p1, const BigInt& p2, int m) {
  if (m <= 7) throw invalid_input("ordering hypothesis needs m > 7 (got " + std::to_string(m) + ")");
  if (!(p1 < p2)) throw invalid_input("ordering hypothesis needs p1 < p2");
  if (!is_probable_prime(p1) || !is_probable_prime(p2)) throw invalid_input("ordering hypothesis needs prime p1, p2");
}

}  // namespace detail

inline bool check_ordering_hypothesis(const BigInt& p1, const BigInt& p2, int m) {
  detail::require_ordering_preconditions(p1, p2, m);
  const auto checks = detail::ordering_inequalities(p1, p2, static_cast<unsigned>(m));
  return std::all_of(checks.begin(), checks.end(), [](const Inequality& q) { return q.pass; });
}

/// Exponent pair (k, l) naming the term p1^k p2^l.
struct TermExponents {
  unsigned long k = 0;
  unsigned long l = 0;
};

/// For every pair of listed terms whose keys l(1 + 1/m) + k differ, the larger
/// key must name the larger value. Keys are compared as m*k + (m+1)*l.
inline bool verify_ordering_conclusion(const BigInt& p1, const BigInt& p2, int m, std::span<const TermExponents> terms) {
  if (!check_ordering_hypothesis(p1, p2, m)) throw invalid_input("verify_ordering_conclusion: hypothesis does not hold");
  const unsigned long mm = static_cast<unsigned long>(m);
  std::vector<BigInt> keys, values;
  for (const auto& t : terms) {
    if (t.l >= mm) throw invalid_input("verify_ordering_conclusion: exponent l must be < m");
    keys.emplace_back(BigInt(mm) * t.k + BigInt(mm + 1) * t.l);
    values.push_back(pow(p1, t.k) * pow(p2, t.l));
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j)
      if (keys[i] > keys[j] && !(values[i] > values[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Conditional two-prime construction

struct NamedCheck {
  std::string name;
  std::vector<Inequality> inequalities;
  bool pass = false;
};

struct AbcPairReport {
  BigRational c;
  unsigned m = 0;
  BigInt p1;
  BigInt p2;
  std::vector<NamedCheck> checks;

  bool valid() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const NamedCheck& ch) { return ch.pass; });
  }

  const NamedCheck* find(std::string_view name) const {
    for (const auto& ch : checks)
      if (ch.name == name) return &ch;
    return nullptr;
  }
};

namespace detail {

inline NamedCheck named(std::string name, std::vector<Inequality> qs) {
  NamedCheck ch{std::move(name), std::move(qs), true};
  for (const auto& q : ch.inequalities) ch.pass = ch.pass && q.pass;
  return ch;
}

}  // namespace detail

/// Evaluates every condition of the construction on caller-chosen p1 < p2
/// (epsilon fixed to 1, so the exponent on rad(p1 p2) is 4).
inline AbcPairReport abc_report_for(const BigRational& c, unsigned m, const BigInt& p1, const BigInt& p2) {
  if (c <= 0) throw invalid_input("abc_report_for: C must be positive");
  if (m < 1) throw invalid_input("abc_report_for: m must be positive");
  AbcPairReport r{c, m, p1, p2, {}};
  const BigInt c_num = c.get_num();
  const BigInt c_den = c.get_den();

  r.checks.push_back(detail::named(
      "p1_lower_bound", {Inequality::make("p1 >= 18^m", p1, Comparison::greater_equal, pow(BigInt(18), m))}));
  r.checks.push_back(detail::named("a_p2_above_3p1", {Inequality::make("p2 > 3*p1", p2, Comparison::greater, 3 * p1)}));
  r.checks.push_back(detail::named(
      "b_upper_window", {Inequality::make("(3*p2)^m < p1^(m+1)", pow(3 * p2, m), Comparison::less, pow(p1, m + 1))}));
  r.checks.push_back(detail::named(
      "c_large_p2_powers_excluded",
      {Inequality::make("den(C)*p2^m > num(C)*(p1*p2)^4", c_den * pow(p2, m), Comparison::greater,
                        c_num * pow(p1 * p2, 4))}));
  std::vector<Inequality> case2;
  for (unsigned l = 1; l < m; ++l)
    case2.push_back(Inequality::make("3*p2^l < p1^(l+1), l=" + std::to_string(l), 3 * pow(p2, l), Comparison::less,
                                     pow(p1, l + 1)));
  r.checks.push_back(detail::named("d_case2_separation", std::move(case2)));
  r.checks.push_back(detail::named("e_ordering_hypothesis", detail::ordering_inequalities(p1, p2, m)));
  return r;
}

/// p1 = next_prime(max(18^m, seed)), p2 = next_prime(3 p1). Requires m >= 9 and 3^m > C.
inline AbcPairReport abc_pair(const BigRational& c, int m, const BigInt& seed = 0) {
  if (m < 9) throw invalid_input("abc_pair: m must be at least 9 (m > max{8, log_3 C})");
  if (c <= 0) throw invalid_input("abc_pair: C must be positive");
  const unsigned mu = static_cast<unsigned>(m);
  if (!(pow(BigInt(3), mu) * c.get_den() > c.get_num())) throw invalid_input("abc_pair: need 3^m > C");
  const BigInt floor18 = pow(BigInt(18), mu);
  const BigInt p1 = next_prime(seed > floor18 ? seed : floor18);
  const BigInt p2 = next_prime(3 * p1);
  AbcPairReport r = abc_report_for(c, mu, p1, p2);
  // Bertrand puts p2 in (3 p1, 6 p1), inside the window once p1 >= 18^m.
  if (!r.find("a_p2_above_3p1")->pass || !r.find("b_upper_window")->pass)
    throw invalid_input("abc_pair: p2 fell outside (3 p1, p1^(1+1/m) / 3)");
  return r;
}

/// Recomputes every check from p1, p2, C and m alone and compares it with the
/// stored report, then re-evaluates each stored inequality from its operands.
inline bool reverify_report(const AbcPairReport& r) {
  if (r.m < 1 || r.c <= 0) return false;
  const AbcPairReport fresh = abc_report_for(r.c, r.m, r.p1, r.p2);
  if (fresh.checks.size() != r.checks.size()) return false;
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& a = fresh.checks[i];
    const auto& b = r.checks[i];
    if (a.name != b.name || a.pass != b.pass || a.inequalities.size() != b.inequalities.size()) return false;
    bool all = true;
    for (std::size_t j = 0; j < b.inequalities.size(); ++j) {
      const auto& qa = a.inequalities[j];
      const auto& qb = b.inequalities[j];
      if (!qb.reverify() || qa.lhs != qb.lhs || qa.rhs != qb.rhs || qa.relation != qb.relation) return false;
      all = all && qb.pass;
    }
    if (all != b.pass) return false;
  }
  // Window membership straight from the primes: 3 p1 < p2 and (3 p2)^m < p1^(m+1).
  const bool window = 3 * r.p1 < r.p2 && pow(3 * r.p2, r.m) < pow(r.p1, r.m + 1);
  return window == (r.find("a_p2_above_3p1")->pass && r.find("b_upper_window")->pass);
}

}  // namespace unitcycle
