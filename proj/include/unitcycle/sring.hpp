#pragma once

// The ring Z[1/p1,...,1/pn]: membership, units, associates, signed
// prime-power terms.

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"

namespace unitcycle {

/// Strictly increasing list of primes whose reciprocals are adjoined to Z.
/// The empty set denotes Z itself.
class InversionSet {
 public:
  InversionSet() = default;

  explicit InversionSet(std::vector<BigInt> primes) : primes_(std::move(primes)) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (!is_probable_prime(primes_[i])) throw invalid_input("inversion set: " + unitcycle::to_string(primes_[i]) + " is not prime");
      if (i > 0 && !(primes_[i - 1] < primes_[i]))
        throw invalid_input("inversion set: primes must be distinct and strictly increasing");
    }
  }

  InversionSet(std::initializer_list<long> primes)
      : InversionSet(std::vector<BigInt>(primes.begin(), primes.end())) {}

  /// Comma-separated decimals. Unsorted input is sorted; "" and "Z" give the empty set.
  static InversionSet parse(std::string_view text) {
    std::vector<BigInt> primes;
    if (text.empty() || text == "Z") return InversionSet();
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      primes.push_back(parse_bigint(piece));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    std::sort(primes.begin(), primes.end());
    return InversionSet(std::move(primes));
  }

  std::span<const BigInt> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  bool empty() const noexcept { return primes_.empty(); }
  const BigInt& operator[](std::size_t i) const { return primes_[i]; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i > 0) out += ',';
      out += unitcycle::to_string(primes_[i]);
    }
    return out;
  }

  friend bool operator==(const InversionSet&, const InversionSet&) = default;

 private:
  std::vector<BigInt> primes_;
};

/// sign * prod p_i^{e_i}. Exponents may be negative when the term is a unit
/// of the ring; inside a Relation they are nonnegative.
struct UnitTerm {
  int sign = 1;
  std::vector<long> exponents;

  friend bool operator==(const UnitTerm&, const UnitTerm&) = default;
};

inline bool factors_over(const BigInt& n, const InversionSet& s) {
  return factor_over(n, s.primes()).cofactor == 1;
}

inline bool is_member(const BigRational& q, const InversionSet& s) {
  return factors_over(q.get_den(), s);
}

inline bool is_unit(const BigRational& q, const InversionSet& s) {
  if (q == 0) throw invalid_input("is_unit: zero is never a unit");
  return factors_over(q.get_num(), s) && factors_over(q.get_den(), s);
}

inline bool are_associates(const BigRational& a, const BigRational& b, const InversionSet& s) {
  if (a == 0 || b == 0) throw invalid_input("are_associates: arguments must be nonzero");
  return is_unit(a / b, s);
}

inline BigRational term_value(const UnitTerm& t, const InversionSet& s) {
  if (t.exponents.size() != s.size()) throw invalid_input("term_value: exponent vector does not match the inversion set");
  if (t.sign != 1 && t.sign != -1) throw invalid_input("term_value: sign must be +1 or -1");
  BigRational out = t.sign;
  for (std::size_t i = 0; i < s.size(); ++i) out *= rpow(BigRational(s[i]), t.exponents[i]);
  return out;
}

/// Inverse of term_value on units. Throws if q is not a unit of s.
inline UnitTerm unit_term_of(const BigRational& q, const InversionSet& s) {
  if (!is_unit(q, s)) throw invalid_input("unit_term_of: " + to_string(q) + " is not a unit");
  UnitTerm t;
  t.sign = sgn(q) < 0 ? -1 : 1;
  const auto num = factor_over(q.get_num(), s.primes());
  const auto den = factor_over(q.get_den(), s.primes());
  t.exponents.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    t.exponents[i] = static_cast<long>(num.exponents[i]) - static_cast<long>(den.exponents[i]);
  return t;
}

}  // namespace unitcycle
