#pragma once

// Explicit 4-cycle polynomials: exact interpolation through cycle points,
// orbit iteration, and the Zieve unit-pair criterion.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"
#include "unitcycle/relsearch.hpp"
#include "unitcycle/sring.hpp"

namespace unitcycle {

/// Parses "a,b/c,-d" into rationals.
inline std::vector<BigRational> parse_rational_list(std::string_view text) {
  std::vector<BigRational> out;
  if (text.empty()) throw invalid_input("empty rational list");
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Exact polynomial, coefficients lowest degree first, no trailing zeros.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<BigRational> coefficients) : coefficients_(std::move(coefficients)) { trim(); }

  static RationalPolynomial parse(std::string_view text) { return RationalPolynomial(parse_rational_list(text)); }
  static RationalPolynomial identity() { return RationalPolynomial({BigRational(0), BigRational(1)}); }

  const std::vector<BigRational>& coefficients() const noexcept { return coefficients_; }
  bool is_zero() const noexcept { return coefficients_.empty(); }
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }

  BigRational operator()(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// "5,-19/3,4,-2/3"
  std::string coefficient_list() const {
    if (coefficients_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      if (i > 0) out += ',';
      out += to_string(coefficients_[i]);
    }
    return out;
  }

  /// "-2/3x^3 + 4x^2 - 19/3x + 5"
  std::string expression() const {
    if (coefficients_.empty()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
      const BigRational& c = coefficients_[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      const bool negative = c < 0;
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      const BigRational mag = abs(c);
      if (d == 0 || mag != 1) out += to_string(mag);
      if (d >= 1) out += 'x';
      if (d >= 2) out += '^' + std::to_string(d);
    }
    return out;
  }

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  void trim() {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  }

  std::vector<BigRational> coefficients_;
};

/// Unique polynomial of degree < n through (xs[i], ys[i]), via Newton divided
/// differences expanded to the monomial basis.
inline RationalPolynomial interpolate(std::span<const BigRational> xs, std::span<const BigRational> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw invalid_input("interpolate: need equally many, nonzero, points and values");
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (xs[i] == xs[j]) throw invalid_input("interpolate: repeated point " + to_string(xs[i]));
  std::vector<BigRational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  // Horner on the Newton form: p = dd[n-1]; p = p * (x - xs[i]) + dd[i].
  std::vector<BigRational> poly{dd[n - 1]};
  for (std::size_t step = n - 1; step-- > 0;) {
    std::vector<BigRational> next(poly.size() + 1, BigRational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[step];
    }
    next[0] += dd[step];
    poly = std::move(next);
  }
  return RationalPolynomial(std::move(poly));
}

struct CycleWitness {
  InversionSet ring;
  std::vector<BigRational> points;
  RationalPolynomial polynomial;
};

namespace detail {

inline void require_member(const BigRational& q, const InversionSet& s, const std::string& what) {
  if (is_member(q, s)) return;
  const BigInt cofactor = factor_over(q.get_den(), s.primes()).cofactor;
  const BigInt bad = smallest_prime_factor(cofactor);
  throw not_in_ring(what + " " + to_string(q) + " is not in Z[1/" + (s.empty() ? std::string("1") : s.to_string()) +
                        "]: denominator has prime factor " + to_string(bad),
                    to_string(q), to_string(bad));
}

inline void require_distinct(std::span<const BigRational> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw invalid_input("repeated point " + to_string(points[i]));
}

}  // namespace detail

/// Degree <= 3 interpolant sending each point to the next one cyclically.
/// Throws not_in_ring if a coefficient has a denominator outside S.
inline CycleWitness lagrange_cycle_poly(std::span<const BigRational> points, const InversionSet& s) {
  if (points.size() != 4) throw invalid_input("lagrange_cycle_poly: exactly four points required");
  detail::require_distinct(points);
  for (const auto& x : points) detail::require_member(x, s, "point");
  std::vector<BigRational> targets(points.begin() + 1, points.end());
  targets.push_back(points.front());
  CycleWitness w{s, {points.begin(), points.end()}, interpolate(points, targets)};
  for (const auto& c : w.polynomial.coefficients()) detail::require_member(c, s, "coefficient");
  return w;
}

enum class CycleFailure { none, wrong_size, repeated_point, point_not_in_ring, coefficient_not_in_ring, wrong_image };

inline const char* to_string(CycleFailure f) {
  switch (f) {
    case CycleFailure::none: return "ok";
    case CycleFailure::wrong_size: return "wrong_size";
    case CycleFailure::repeated_point: return "repeated_point";
    case CycleFailure::point_not_in_ring: return "point_not_in_ring";
    case CycleFailure::coefficient_not_in_ring: return "coefficient_not_in_ring";
    case CycleFailure::wrong_image: return "wrong_image";
  }
  return "?";
}

struct CycleCheck {
  bool ok = false;
  CycleFailure reason = CycleFailure::none;
  std::string detail;
};

/// Points distinct, everything in the ring, f(x_i) = x_{i+1 mod n}.
inline CycleCheck verify_cycle(const CycleWitness& w) {
  const auto& pts = w.points;
  if (pts.size() < 1) return {false, CycleFailure::wrong_size, "no points"};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return {false, CycleFailure::repeated_point, to_string(pts[i])};
  for (const auto& x : pts)
    if (!is_member(x, w.ring)) return {false, CycleFailure::point_not_in_ring, to_string(x)};
  for (const auto& c : w.polynomial.coefficients())
    if (!is_member(c, w.ring)) return {false, CycleFailure::coefficient_not_in_ring, to_string(c)};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const BigRational image = w.polynomial(pts[i]);
    const BigRational& expected = pts[(i + 1) % pts.size()];
    if (image != expected)
      return {false, CycleFailure::wrong_image, "f(" + to_string(pts[i]) + ") = " + to_string(image) + ", expected " + to_string(expected)};
  }
  return {true, CycleFailure::none, {}};
}

enum class OrbitOutcome { cycle, no_cycle_within, escaping };

inline const char* to_string(OrbitOutcome o) {
  switch (o) {
    case OrbitOutcome::cycle: return "cycle";
    case OrbitOutcome::no_cycle_within: return "no_cycle_within";
    case OrbitOutcome::escaping: return "escaping";
  }
  return "?";
}

struct OrbitReport {
  OrbitOutcome outcome = OrbitOutcome::no_cycle_within;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::size_t iterations = 0;  // polynomial applications performed
  std::vector<BigRational> trajectory;
};

inline constexpr std::size_t kDefaultOrbitBitCeiling = 4096;

/// Iterates exactly from `start`, stopping at the first repeated value, after
/// max_iter applications, or when an iterate outgrows the bit ceiling.
inline OrbitReport orbit(const RationalPolynomial& p, const BigRational& start, std::size_t max_iter,
                         std::size_t bit_ceiling = kDefaultOrbitBitCeiling) {
  if (max_iter < 1) throw invalid_input("orbit: max_iter must be >= 1");
  OrbitReport r;
  std::map<BigRational, std::size_t> seen;
  BigRational x = start;
  r.trajectory.push_back(x);
  seen.emplace(x, 0);
  for (std::size_t i = 1; i <= max_iter; ++i) {
    x = p(x);
    r.iterations = i;
    if (mpz_sizeinbase(x.get_num_mpz_t(), 2) > bit_ceiling || mpz_sizeinbase(x.get_den_mpz_t(), 2) > bit_ceiling) {
      r.outcome = OrbitOutcome::escaping;
      return r;
    }
    if (auto it = seen.find(x); it != seen.end()) {
      r.outcome = OrbitOutcome::cycle;
      r.preperiod = it->second;
      r.period = i - it->second;
      return r;
    }
    seen.emplace(x, i);
    r.trajectory.push_back(x);
  }
  return r;
}

/// Units +-prod p_i^{e_i}, e_i in [-bound, bound], in the deterministic scan
/// order: exponent vectors lexicographic under the digit order 0, 1, -1, 2,
/// -2, ..., and for each vector the positive unit before the negative one.
inline std::vector<BigRational> units_in_scan_order(const InversionSet& s, unsigned bound, std::size_t ceiling) {
  BigInt count = 2;
  for (std::size_t i = 0; i < s.size(); ++i) {
    count *= 2 * bound + 1;
    if (count > ceiling) throw search_too_large("search too large: unit scan exceeds ceiling " + std::to_string(ceiling));
  }
  std::vector<long> digits{0};
  for (long k = 1; k <= static_cast<long>(bound); ++k) {
    digits.push_back(k);
    digits.push_back(-k);
  }
  std::vector<BigRational> magnitudes{BigRational(1)};
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<BigRational> next;
    next.reserve(magnitudes.size() * digits.size());
    for (const auto& base : magnitudes)
      for (long d : digits) next.push_back(base * rpow(BigRational(s[i]), d));
    magnitudes = std::move(next);
  }
  std::vector<BigRational> out;
  out.reserve(magnitudes.size() * 2);
  for (const auto& m : magnitudes) {
    out.push_back(m);
    out.push_back(-m);
  }
  return out;
}

/// First (u, v) in scan order with u + v ~ u + 1 associates, 1 + u + v a unit,
/// u + v != 0 and u != -1.
inline std::optional<std::pair<BigRational, BigRational>> zieve_unit_search(const InversionSet& s, unsigned exponent_bound,
                                                                            std::size_t ceiling = 2'000'000) {
  const auto units = units_in_scan_order(s, exponent_bound, ceiling);
  for (const auto& u : units) {
    if (u == -1) continue;
    const BigRational u1 = u + 1;
    for (const auto& v : units) {
      const BigRational uv = u + v;
      if (uv == 0) continue;
      const BigRational w = uv + 1;
      if (w == 0) continue;
      if (are_associates(uv, u1, s) && is_unit(w, s)) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

/// 1 + u + v - w = 0 with w = 1 + u + v, cleared of denominators and of the
/// common factor. Throws if the cleared sum has a zero proper subsum.
inline Relation zieve_relation(const BigRational& u, const BigRational& v, const InversionSet& s) {
  const BigRational w = 1 + u + v;
  BigInt scale = 1;
  for (const BigRational* q : {&u, &v, &w}) scale = lcm(scale, BigInt(q->get_den()));
  std::array<BigInt, 4> values;
  const std::array<BigRational, 4> terms{BigRational(1), u, v, -w};
  BigInt g = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const BigRational scaled = terms[i] * scale;
    values[i] = scaled.get_num();
    g = gcd(g, values[i]);
  }
  for (auto& x : values) x /= g;
  return make_relation(s, values);
}

/// (x2 - x1, x3 - x2, x4 - x3, x1 - x4); always sums to zero.
inline std::array<BigRational, 4> relation_from_cycle(std::span<const BigRational> points) {
  if (points.size() != 4) throw invalid_input("relation_from_cycle: exactly four points required");
  detail::require_distinct(points);
  return {points[1] - points[0], points[2] - points[1], points[3] - points[2], points[0] - points[3]};
}

}  // namespace unitcycle
