#pragma once

// Exact integer/rational arithmetic and the handful of prime utilities the
// rest of the library needs. Values are GMP-backed; nothing here rounds.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitcycle/errors.hpp"

namespace unitcycle {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline int sign(const BigInt& n) { return sgn(n); }

inline BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

inline BigRational rpow(const BigRational& base, long exponent) {
  BigRational out;
  const unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  if (exponent < 0) {
    if (out == 0) throw invalid_input("pow: zero to a negative power");
    out = 1 / out;
  }
  return out;
}

inline std::string to_string(const BigInt& n) { return n.get_str(10); }
inline std::string to_string(const BigRational& q) { return q.get_str(10); }
template <class T, class U>
std::string to_string(const __gmp_expr<T, U>& e) {
  return __gmp_expr<T, T>(e).get_str(10);
}

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  BigInt out;
  if (s.empty() || out.set_str(s, 10) != 0) throw invalid_input("not an integer: '" + std::string(text) + "'");
  return out;
}

/// Accepts "a", "a/b", "-a/b". The denominator must be nonzero.
inline BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_bigint(text));
  const BigInt num = parse_bigint(text.substr(0, slash));
  const BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw invalid_input("zero denominator in '" + std::string(text) + "'");
  BigRational out(num, den);
  out.canonicalize();
  return out;
}

namespace detail {

// n - 1 = d * 2^s with d odd; true if `witness` does not prove n composite.
inline bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned long s, const BigInt& witness) {
  const BigInt n_minus_1 = n - 1;
  BigInt x;
  mpz_powm(x.get_mpz_t(), witness.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

inline constexpr std::array<unsigned, 13> kDeterministicWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// The first 13 prime bases are deterministic below this bound (Sorenson-Webster).
inline const BigInt& deterministic_bound() {
  static const BigInt bound("3317044064679887385961981", 10);
  return bound;
}

}  // namespace detail

/// Deterministic below ~3.3e24; 64 pseudo-random Miller-Rabin rounds above (error < 2^-128).
inline bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned p : detail::kDeterministicWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
  }
  BigInt d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t()) != 0) {
    d >>= 1;
    ++s;
  }
  if (n < detail::deterministic_bound()) {
    for (unsigned w : detail::kDeterministicWitnesses) {
      if (!detail::miller_rabin_round(n, d, s, BigInt(w))) return false;
    }
    return true;
  }
  // Seeded from n so the answer is reproducible.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(n);
  const BigInt span = n - 3;
  for (int round = 0; round < 64; ++round) {
    const BigInt witness = rng.get_z_range(span) + 2;
    if (!detail::miller_rabin_round(n, d, s, witness)) return false;
  }
  return true;
}

/// Smallest prime strictly greater than n.
inline BigInt next_prime(const BigInt& n) {
  if (n < 1) throw invalid_input("next_prime: n must be >= 1");
  if (n < 2) return 2;
  BigInt candidate = n + 1;
  if (candidate == 3) return 3;
  if (mpz_even_p(candidate.get_mpz_t()) != 0) ++candidate;
  while (!is_probable_prime(candidate)) candidate += 2;
  return candidate;
}

struct Factorization {
  std::vector<unsigned long> exponents;
  BigInt cofactor;  // positive, coprime to every listed prime
};

/// n = sign(n) * prod primes[i]^exponents[i] * cofactor.
inline Factorization factor_over(const BigInt& n, std::span<const BigInt> primes) {
  if (n == 0) throw invalid_input("factor_over: n must be nonzero");
  Factorization out;
  out.exponents.reserve(primes.size());
  out.cofactor = abs(n);
  for (const BigInt& p : primes) {
    if (p < 2) throw invalid_input("factor_over: " + to_string(p) + " is not a prime");
    out.exponents.push_back(mpz_remove(out.cofactor.get_mpz_t(), out.cofactor.get_mpz_t(), p.get_mpz_t()));
  }
  return out;
}

/// Product of the listed primes dividing at least one value. Values must be
/// S-units, i.e. factor completely over `primes`.
inline BigInt radical(std::span<const BigInt> values, std::span<const BigInt> primes) {
  std::vector<bool> used(primes.size(), false);
  for (const BigInt& v : values) {
    const Factorization f = factor_over(v, primes);
    if (f.cofactor != 1)
      throw invalid_input("radical: " + to_string(v) + " has a prime factor outside the given set");
    for (std::size_t i = 0; i < primes.size(); ++i) used[i] = used[i] || f.exponents[i] > 0;
  }
  BigInt out = 1;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (used[i]) out *= primes[i];
  return out;
}

/// Smallest prime factor of n > 1 by trial division, giving up at `limit`
/// (returns n itself in that case, which is then a lower bound witness only).
inline BigInt smallest_prime_factor(const BigInt& n, unsigned long limit = 1'000'000) {
  if (n < 2) throw invalid_input("smallest_prime_factor: n must be > 1");
  if (mpz_even_p(n.get_mpz_t()) != 0) return 2;
  for (unsigned long d = 3; d <= limit; d += 2) {
    if (BigInt(d) * d > n) return n;
    if (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) return BigInt(d);
  }
  return n;
}

}  // namespace unitcycle
