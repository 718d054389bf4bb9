#pragma once

// Relation counts against minimum prime gap over families of inversion sets,
// with CSV and SVG scatter output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"
#include "unitcycle/relsearch.hpp"
#include "unitcycle/sring.hpp"

namespace unitcycle {

inline BigInt min_gap(const InversionSet& s) {
  if (s.size() < 2) throw invalid_input("min_gap: need at least two primes");
  BigInt best = s[1] - s[0];
  for (std::size_t i = 2; i < s.size(); ++i)
    if (s[i] - s[i - 1] < best) best = s[i] - s[i - 1];
  return best;
}

inline std::vector<BigInt> first_primes(std::size_t n) {
  std::vector<BigInt> out;
  BigInt p = 1;
  while (out.size() < n) {
    p = next_prime(p);
    out.push_back(p);
  }
  return out;
}

inline std::size_t relation_count(const InversionSet& s, const SearchConfig& mode) {
  return find_relation_values(s, mode).size();
}

/// Relations whose four values have gcd 1, i.e. not a multiple of a smaller one.
inline std::size_t primitive_relation_count(const InversionSet& s, const SearchConfig& mode) {
  std::size_t n = 0;
  for (const auto& q : find_relation_values(s, mode)) {
    BigInt g = 0;
    for (const auto& v : q) g = gcd(g, v);
    n += g == 1;
  }
  return n;
}

struct SurveyRow {
  InversionSet primes;
  BigInt min_gap;
  std::size_t relation_count = 0;
};

struct ScatterPoint {
  BigInt min_gap;
  std::size_t relation_count = 0;
  std::size_t frequency = 0;

  friend bool operator==(const ScatterPoint&, const ScatterPoint&) = default;
};

/// Rows grouped by (min_gap, relation_count), ascending.
struct ScatterAggregate {
  std::vector<ScatterPoint> points;

  void add(const SurveyRow& row) {
    auto it = std::lower_bound(points.begin(), points.end(), row, [](const ScatterPoint& p, const SurveyRow& r) {
      return p.min_gap != r.min_gap ? p.min_gap < r.min_gap : p.relation_count < r.relation_count;
    });
    if (it != points.end() && it->min_gap == row.min_gap && it->relation_count == row.relation_count) {
      ++it->frequency;
    } else {
      points.insert(it, ScatterPoint{row.min_gap, row.relation_count, 1});
    }
  }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& p : points) n += p.frequency;
    return n;
  }
};

struct SurveyOptions {
  std::size_t pool = 12;  // first N primes
  std::size_t subset_size = 5;
  SearchConfig mode = SearchConfig::linear();
  std::size_t subset_ceiling = 100'000;
  bool full = false;  // lift subset_ceiling
  unsigned workers = 1;
};

inline BigInt binomial(std::size_t n, std::size_t k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace detail {

inline void validate(const SurveyOptions& opt) {
  if (opt.subset_size < 2) throw invalid_input("survey: subset size must be >= 2");
  if (opt.subset_size > opt.pool)
    throw invalid_input("survey: pool of " + std::to_string(opt.pool) + " primes is smaller than subset size " +
                        std::to_string(opt.subset_size));
}

inline SurveyRow evaluate_subset(const std::vector<BigInt>& pool, const std::vector<std::size_t>& idx,
                                 const SearchConfig& mode) {
  std::vector<BigInt> primes;
  primes.reserve(idx.size());
  for (auto i : idx) primes.push_back(pool[i]);
  SurveyRow row{InversionSet(std::move(primes)), {}, 0};
  row.min_gap = min_gap(row.primes);
  SearchConfig single = mode;
  single.workers = 1;
  row.relation_count = relation_count(row.primes, single);
  return row;
}

// Advances idx to the next k-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Evaluates subsets in blocks across workers; rows reach `sink` in input order.
inline void evaluate_in_order(const std::vector<BigInt>& pool, const std::vector<std::vector<std::size_t>>& block,
                              const SearchConfig& mode, unsigned workers,
                              const std::function<void(const SurveyRow&)>& sink) {
  std::vector<SurveyRow> rows(block.size());
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(workers, block.size()));
  if (shards == 1) {
    for (std::size_t i = 0; i < block.size(); ++i) rows[i] = evaluate_subset(pool, block[i], mode);
  } else {
    std::vector<std::jthread> pool_threads;
    for (std::size_t w = 0; w < shards; ++w)
      pool_threads.emplace_back([&, w] {
        for (std::size_t i = w; i < block.size(); i += shards) rows[i] = evaluate_subset(pool, block[i], mode);
      });
  }
  for (const auto& r : rows) sink(r);
}

inline constexpr std::size_t kBlock = 4096;

}  // namespace detail

/// Visits one row per subset, in lexicographic subset order, without holding
/// the whole family in memory.
inline void survey_stream(const SurveyOptions& opt, const std::function<void(const SurveyRow&)>& sink) {
  detail::validate(opt);
  const BigInt total = binomial(opt.pool, opt.subset_size);
  if (!opt.full && total > opt.subset_ceiling)
    throw search_too_large("survey: C(" + std::to_string(opt.pool) + "," + std::to_string(opt.subset_size) + ") = " +
                           to_string(total) + " subsets exceeds ceiling " + std::to_string(opt.subset_ceiling) +
                           "; pass the full-scan flag or use sampling mode");
  const auto pool = first_primes(opt.pool);
  std::vector<std::size_t> idx(opt.subset_size);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::vector<std::size_t>> block;
  bool more = true;
  while (more) {
    block.push_back(idx);
    more = detail::next_combination(idx, opt.pool);
    if (block.size() == detail::kBlock || !more) {
      detail::evaluate_in_order(pool, block, opt.mode, opt.workers, sink);
      block.clear();
    }
  }
}

struct SurveyResult {
  std::vector<SurveyRow> rows;
  ScatterAggregate aggregate;
};

inline SurveyResult survey_run(const SurveyOptions& opt) {
  SurveyResult out;
  survey_stream(opt, [&](const SurveyRow& row) {
    out.aggregate.add(row);
    out.rows.push_back(row);
  });
  return out;
}

inline constexpr std::uint64_t kDefaultSampleSeed = 0x5EED;

namespace detail {

// Exactly uniform on [0, n) by rejection.
inline std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

// Floyd's algorithm: uniform k-subset of {0..n-1}, returned sorted.
inline std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::set<std::size_t> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace detail

/// `count` distinct uniformly random subsets (fixed seed), rows in lexicographic order.
inline SurveyResult survey_sample(const SurveyOptions& opt, std::size_t count, std::uint64_t seed = kDefaultSampleSeed) {
  detail::validate(opt);
  const BigInt total = binomial(opt.pool, opt.subset_size);
  if (total < count) throw invalid_input("survey_sample: requested more samples than there are subsets");
  std::mt19937_64 rng(seed);
  std::set<std::vector<std::size_t>> picked;
  while (picked.size() < count) picked.insert(detail::random_subset(rng, opt.pool, opt.subset_size));
  const auto pool = first_primes(opt.pool);
  SurveyResult out;
  const std::vector<std::vector<std::size_t>> subsets(picked.begin(), picked.end());
  detail::evaluate_in_order(pool, subsets, opt.mode, opt.workers, [&](const SurveyRow& row) {
    out.aggregate.add(row);
    out.rows.push_back(row);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline constexpr const char* kCsvHeader = "primes;min_gap;relation_count";

inline std::string csv_line(const SurveyRow& row) {
  return row.primes.to_string() + ';' + to_string(row.min_gap) + ';' + std::to_string(row.relation_count);
}

inline void emit_csv(const std::vector<SurveyRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

inline void emit_csv(const std::vector<SurveyRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  emit_csv(rows, f);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

namespace detail {

inline std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

inline constexpr double kMaxRadius = 12.0;

/// Circle radius for a point: kMaxRadius * sqrt(frequency / max frequency).
inline double scatter_radius(std::size_t frequency, std::size_t max_frequency) {
  return kMaxRadius * std::sqrt(static_cast<double>(frequency) / static_cast<double>(max_frequency));
}

/// Standalone SVG 1.1: x = min gap, y = relation count, area ~ number of rows.
inline void emit_scatter_svg(const ScatterAggregate& agg, std::ostream& out) {
  if (agg.points.empty()) throw invalid_input("emit_scatter_svg: empty aggregate");
  constexpr double width = 640, height = 480, left = 70, right = 30, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  double max_x = 1, max_y = 1;
  std::size_t max_f = 1;
  for (const auto& p : agg.points) {
    max_x = std::max(max_x, p.min_gap.get_d());
    max_y = std::max(max_y, static_cast<double>(p.relation_count));
    max_f = std::max(max_f, p.frequency);
  }
  auto sx = [&](double x) { return left + plot_w * x / max_x; };
  auto sy = [&](double y) { return top + plot_h - plot_h * y / max_y; };
  using detail::fixed;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<title>Minimum prime gap vs. relation count</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\"" << top + plot_h << "\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  constexpr int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double xv = max_x * t / ticks;
    const double yv = max_y * t / ticks;
    out << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << fixed(top + plot_h + 16) << "\" text-anchor=\"middle\">"
        << fixed(xv) << "</text>\n";
    out << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(sy(yv) + 4) << "\" text-anchor=\"end\">" << fixed(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(height - 15)
      << "\" text-anchor=\"middle\" font-size=\"13\">minimum gap</text>\n";
  out << "<text x=\"18\" y=\"" << fixed(top + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << fixed(top + plot_h / 2) << ")\">relation count</text>\n";
  out << "</g>\n";
  out << "<g fill=\"steelblue\" fill-opacity=\"0.6\" stroke=\"navy\" stroke-width=\"0.5\">\n";
  for (const auto& p : agg.points) {
    out << "<circle cx=\"" << fixed(sx(p.min_gap.get_d())) << "\" cy=\"" << fixed(sy(static_cast<double>(p.relation_count)))
        << "\" r=\"" << fixed(scatter_radius(p.frequency, max_f)) << "\" data-gap=\"" << to_string(p.min_gap)
        << "\" data-count=\"" << p.relation_count << "\" data-frequency=\"" << p.frequency << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

inline void emit_scatter_svg(const ScatterAggregate& agg, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  emit_scatter_svg(agg, f);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace unitcycle
