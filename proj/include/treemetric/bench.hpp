#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/best_match.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/left_regular.hpp"
#include "treemetric/random.hpp"

namespace treemetric {

enum class BenchMetric { bm, lr, bmstar };

inline BenchMetric parse_bench_metric(const std::string& name) {
  if (name == "bm") return BenchMetric::bm;
  if (name == "lr") return BenchMetric::lr;
  if (name == "bmstar") return BenchMetric::bmstar;
  throw ValidationError("unknown benchmark metric '" + name + "' (expected bm, lr or bmstar)");
}

struct ScalingOptions {
  BenchMetric metric = BenchMetric::bm;
  std::size_t first_depth = 2;
  std::size_t last_depth = 8;
  std::size_t arity = 2;
  std::uint64_t seed = 1;
  std::size_t trials = 5;
  /// `constant` makes every label equal, the worst case for left-regularization.
  LabelMode labels = LabelMode::uniform;
  std::size_t alphabet_size = 4;
  /// Each timed sample repeats the call until roughly this much time has passed.
  double min_sample_ns = 2e6;
};

struct ScalingRow {
  std::string metric;
  std::size_t depth = 0;
  std::size_t n = 0;
  std::size_t arity = 0;
  std::size_t trials = 0;
  double median_ns = 0;
  /// median_ns over the previous row's median_ns; empty on the first row.
  std::optional<double> ratio;
  /// Distance between the two benchmark trees, as returned by the library.
  Rational value;
};

inline LabelAlphabet bench_alphabet(std::size_t size) {
  static constexpr std::string_view letters = "ABCDEFGHIJKLMOPQRSTUVWXYZ";
  if (size < 1 || size > letters.size()) throw ValidationError("benchmark alphabet size must be in [1, 25]");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.emplace_back(1, letters[i]);
  return LabelAlphabet::from_labels(names);
}

/// The two input trees used at one depth; identical for identical options.
inline std::pair<CompletedTree, CompletedTree> bench_inputs(const ScalingOptions& options, std::size_t depth,
                                                            const LabelAlphabet& alphabet) {
  const double lock_p = options.metric == BenchMetric::bmstar ? 0.5 : 0.0;
  const std::uint64_t base = options.seed * 1000003ULL + depth * 2;
  return {random_perfect_tree(base, depth, options.arity, alphabet, options.labels, lock_p),
          random_perfect_tree(base + 1, depth, options.arity, alphabet, options.labels, lock_p)};
}

inline Rational bench_distance(BenchMetric metric, const CompletedTree& a, const CompletedTree& b,
                               const LabelAlphabet& alphabet) {
  switch (metric) {
    case BenchMetric::bm:
      return d_bm(a, b, alphabet).value;
    case BenchMetric::lr:
      return d_lr(a, b, alphabet).value;
    case BenchMetric::bmstar:
      return d_bm_star(a, b, alphabet).value;
  }
  return 0;
}

inline std::string bench_metric_name(const ScalingOptions& options) {
  switch (options.metric) {
    case BenchMetric::bm:
      return "bm";
    case BenchMetric::bmstar:
      return "bmstar";
    case BenchMetric::lr:
      return options.labels == LabelMode::constant ? "lr_adversarial" : "lr";
  }
  return "";
}

/// Median wall time per call on perfect random trees at each depth, with the
/// ratio between consecutive depths. Each depth gets one discarded warmup call
/// and a calibration batch; the timed samples then visit the depths
/// round-robin so that a transient slowdown hits every depth alike.
inline std::vector<ScalingRow> run_scaling(const ScalingOptions& options) {
  if (options.first_depth > options.last_depth) throw ValidationError("depth range must be ascending");
  if (options.trials < 5) throw ValidationError("at least 5 trials are required");
  if (options.metric != BenchMetric::lr) detail::require_best_match_arity(options.arity);
  const auto alphabet = bench_alphabet(options.alphabet_size);
  using Clock = std::chrono::steady_clock;
  auto elapsed_ns = [](Clock::time_point since) {
    return std::chrono::duration<double, std::nano>(Clock::now() - since).count();
  };

  struct Case {
    CompletedTree a, b;
    std::size_t reps;
    std::vector<double> samples;
  };
  std::vector<Case> cases;
  std::vector<ScalingRow> rows;
  for (std::size_t depth = options.first_depth; depth <= options.last_depth; ++depth) {
    auto [a, b] = bench_inputs(options, depth, alphabet);
    ScalingRow row;
    row.metric = bench_metric_name(options);
    row.depth = depth;
    row.n = a.size();
    row.arity = options.arity;
    row.trials = options.trials;
    row.value = bench_distance(options.metric, a, b, alphabet);

    // Calibrate on a batch lasting about a fifth of a sample.
    std::size_t calls = 0;
    const auto start = Clock::now();
    double spent = 0;
    do {
      bench_distance(options.metric, a, b, alphabet);
      ++calls;
      spent = elapsed_ns(start);
    } while (spent < options.min_sample_ns / 5);
    const double per_call = std::max(spent / static_cast<double>(calls), 1.0);
    const auto reps = static_cast<std::size_t>(std::max(1.0, std::ceil(options.min_sample_ns / per_call)));
    cases.push_back({std::move(a), std::move(b), reps, {}});
    rows.push_back(std::move(row));
  }

  for (std::size_t t = 0; t < options.trials; ++t) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      auto& c = cases[i];
      const auto start = Clock::now();
      for (std::size_t r = 0; r < c.reps; ++r) {
        if (bench_distance(options.metric, c.a, c.b, alphabet) != rows[i].value) {
          throw TreeError("benchmark distance changed between repetitions");
        }
      }
      c.samples.push_back(elapsed_ns(start) / static_cast<double>(c.reps));
    }
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& s = cases[i].samples;
    std::sort(s.begin(), s.end());
    rows[i].median_ns = s.size() % 2 ? s[s.size() / 2] : (s[s.size() / 2 - 1] + s[s.size() / 2]) / 2;
    if (i > 0) rows[i].ratio = rows[i].median_ns / rows[i - 1].median_ns;
  }
  return rows;
}

/// Columns: metric,depth,n,arity,trials,median_ns,ratio
inline std::string to_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream os;
  os << "metric,depth,n,arity,trials,median_ns,ratio\n";
  for (const auto& r : rows) {
    os << r.metric << ',' << r.depth << ',' << r.n << ',' << r.arity << ',' << r.trials << ','
       << static_cast<std::int64_t>(std::llround(r.median_ns)) << ',';
    if (r.ratio) {
      std::ostringstream ratio;
      ratio.setf(std::ios::fixed);
      ratio.precision(4);
      ratio << *r.ratio;
      os << ratio.str();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace treemetric
