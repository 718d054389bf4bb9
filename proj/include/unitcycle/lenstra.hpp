#pragma once

// Lenstra constant searches: k elements with pairwise unit differences, the
// Z[1/2] four-clique obstruction, and 3-smoothness of Z[1/2] cycle lengths.

#include <optional>
#include <vector>

#include "unitcycle/cycles.hpp"
#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"
#include "unitcycle/sring.hpp"

namespace unitcycle {

struct CliqueWitness {
  InversionSet ring;
  std::vector<BigRational> elements;

  std::size_t size() const noexcept { return elements.size(); }
};

/// All C(k,2) differences are units and the elements are distinct.
inline bool verify_clique(const CliqueWitness& w) {
  for (std::size_t i = 0; i < w.elements.size(); ++i)
    for (std::size_t j = i + 1; j < w.elements.size(); ++j) {
      const BigRational d = w.elements[i] - w.elements[j];
      if (d == 0 || !is_unit(d, w.ring)) return false;
    }
  return true;
}

/// Searches {0, 1, x_3, ..., x_k} with x_i - x_j units for i != j. Translating
/// and scaling by a unit preserve the property, so x_1 = 0 and x_2 = 1 lose
/// nothing; each further x_i is then itself a unit with x_i - 1 a unit.
/// Returns the first witness in candidate order (positive units before
/// negative, each in unit scan order); nullopt means none within `bound`.
inline std::optional<CliqueWitness> unit_difference_clique(const InversionSet& s, int k, unsigned bound,
                                                           std::size_t ceiling = 2'000'000) {
  if (k < 2) throw invalid_input("unit_difference_clique: k must be >= 2");
  CliqueWitness w{s, {BigRational(0), BigRational(1)}};
  if (k == 2) return w;

  std::vector<BigRational> positive, negative;
  for (const auto& u : units_in_scan_order(s, bound, ceiling)) {
    const BigRational shifted = u - 1;
    if (shifted == 0 || !is_unit(shifted, s)) continue;
    (u > 0 ? positive : negative).push_back(u);
  }
  std::vector<BigRational> candidates = std::move(positive);
  candidates.insert(candidates.end(), negative.begin(), negative.end());

  const std::size_t n = candidates.size();
  std::vector<std::vector<bool>> compatible(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      compatible[i][j] = compatible[j][i] = is_unit(candidates[i] - candidates[j], s);

  const std::size_t need = static_cast<std::size_t>(k - 2);
  std::vector<std::size_t> chosen;
  // Depth-first in index order; the first complete clique is the minimal one.
  auto extend = [&](auto&& self, std::size_t from) -> bool {
    if (chosen.size() == need) return true;
    for (std::size_t c = from; c < n; ++c) {
      bool ok = true;
      for (std::size_t prev : chosen) ok = ok && compatible[prev][c];
      if (!ok) continue;
      chosen.push_back(c);
      if (self(self, c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  for (std::size_t c : chosen) w.elements.push_back(candidates[c]);
  return w;
}

/// Exhaustive form of the Z[1/2] four-clique argument. With x1 - x2 = e1 2^k1,
/// x2 - x3 = e2 2^k2, x3 - x4 = e3 2^k3 (signs e_i = +-1, k_i in [-bound,
/// bound]) it checks that x1 - x3, x2 - x4 and x1 - x4 are never all units.
/// For all-positive signs it also checks the two steps of the argument: a unit
/// x1 - x3 forces k1 = k2, a unit x2 - x4 forces k2 = k3, and then
/// x1 - x4 = 3 * 2^k1.
inline bool z2_four_clique_obstruction(int bound) {
  if (bound < 1) throw invalid_input("z2_four_clique_obstruction: bound must be >= 1");
  const InversionSet z2({BigInt(2)});
  std::vector<BigRational> powers;
  for (int k = -bound; k <= bound; ++k) powers.push_back(rpow(BigRational(2), k));
  auto unit = [&](const BigRational& q) { return q != 0 && is_unit(q, z2); };

  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1})
        for (std::size_t i1 = 0; i1 < powers.size(); ++i1)
          for (std::size_t i2 = 0; i2 < powers.size(); ++i2)
            for (std::size_t i3 = 0; i3 < powers.size(); ++i3) {
              const BigRational d12 = s1 * powers[i1];
              const BigRational d23 = s2 * powers[i2];
              const BigRational d34 = s3 * powers[i3];
              const BigRational d13 = d12 + d23;
              const BigRational d24 = d23 + d34;
              const BigRational d14 = d13 + d34;
              if (unit(d13) && unit(d24) && unit(d14)) return false;
              if (s1 == 1 && s2 == 1 && s3 == 1) {
                if (unit(d13) != (i1 == i2)) return false;
                if (unit(d24) != (i2 == i3)) return false;
                if (i1 == i2 && i2 == i3 && d14 != 3 * powers[i1]) return false;
              }
            }
  return true;
}

/// No prime factor of n exceeds B.
inline bool is_b_smooth(const BigInt& n, const BigInt& b) {
  if (n < 1) throw invalid_input("is_b_smooth: n must be >= 1");
  BigInt rest = n;
  for (BigInt d = 2; d <= b; ++d) {
    if (d * d > rest) return rest <= b;
    while (rest % d == 0) rest /= d;
    if (rest == 1) return true;
  }
  return rest == 1;
}

/// Necessary condition only: a cycle length of a Z[1/2] polynomial is 3-smooth.
inline bool z2_admissible_cycle_length(long k) {
  if (k < 1) throw invalid_input("z2_admissible_cycle_length: k must be >= 1");
  return is_b_smooth(BigInt(k), BigInt(3));
}

}  // namespace unitcycle
