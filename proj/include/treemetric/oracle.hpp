#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/cost_table.hpp"
#include "treemetric/ordered_metric.hpp"
#include "treemetric/report.hpp"

// Brute-force references for the dynamic programs. Everything here enumerates
// planar embeddings explicitly and is only usable on small trees.

namespace treemetric {

struct OracleLimits {
  std::size_t max_depth = 4;
  std::size_t max_arity = 3;
};

namespace detail {

inline void require_oracle_limits(const CompletedTree& t, const OracleLimits& limits) {
  if (t.depth() > limits.max_depth) {
    throw ValidationError("oracle depth cap exceeded: depth " + std::to_string(t.depth()) + " > " +
                          std::to_string(limits.max_depth));
  }
  if (t.arity() > limits.max_arity) {
    throw ValidationError("oracle arity cap exceeded: arity " + std::to_string(t.arity()) + " > " +
                          std::to_string(limits.max_arity));
  }
}

/// Exchanges the subtrees in child slots i and j of vertex p, level by level.
inline CompletedTree swap_subtrees(const CompletedTree& t, std::size_t p, std::size_t i, std::size_t j) {
  std::vector<LabelId> labels(t.labels().begin(), t.labels().end());
  std::vector<std::uint8_t> locked(t.lock_flags().begin(), t.lock_flags().end());
  std::size_t first_i = t.child(p, i);
  std::size_t first_j = t.child(p, j);
  std::size_t width = 1;
  for (std::size_t level = t.level_of(first_i); level <= t.depth(); ++level) {
    std::swap_ranges(labels.begin() + static_cast<std::ptrdiff_t>(first_i),
                     labels.begin() + static_cast<std::ptrdiff_t>(first_i + width),
                     labels.begin() + static_cast<std::ptrdiff_t>(first_j));
    std::swap_ranges(locked.begin() + static_cast<std::ptrdiff_t>(first_i),
                     locked.begin() + static_cast<std::ptrdiff_t>(first_i + width),
                     locked.begin() + static_cast<std::ptrdiff_t>(first_j));
    first_i = first_i * t.arity() + 1;
    first_j = first_j * t.arity() + 1;
    width *= t.arity();
  }
  return CompletedTree(t.arity(), t.depth(), std::move(labels), std::move(locked));
}

inline std::string embedding_key(const CompletedTree& t, bool with_locks) {
  std::string key;
  key.reserve(t.size() * 3);
  for (std::size_t p = 0; p < t.size(); ++p) {
    key.push_back(static_cast<char>(t.label(p) & 0xFF));
    key.push_back(static_cast<char>(t.label(p) >> 8));
    if (with_locks) key.push_back(t.locked(p) ? '*' : '.');
  }
  return key;
}

}  // namespace detail

/// Every tree reachable from `tree` by exchanging child subtrees, each exactly
/// once and the input first. With `respect_locks`, locked vertices never swap.
/// Explores the swap graph breadth-first; duplicates are detected on the
/// serialized labels and lock marks.
inline std::vector<CompletedTree> enumerate_embeddings(const CompletedTree& tree, bool respect_locks,
                                                       const OracleLimits& limits = {}) {
  detail::require_oracle_limits(tree, limits);
  const std::size_t internal = tree.level_begin(tree.depth());
  std::vector<CompletedTree> found{tree};
  std::unordered_set<std::string> seen{detail::embedding_key(tree, true)};
  for (std::size_t next = 0; next < found.size(); ++next) {
    for (std::size_t p = 0; p < internal; ++p) {
      if (respect_locks && found[next].locked(p)) continue;
      for (std::size_t i = 0; i < tree.arity(); ++i) {
        for (std::size_t j = i + 1; j < tree.arity(); ++j) {
          CompletedTree swapped = detail::swap_subtrees(found[next], p, i, j);
          if (seen.insert(detail::embedding_key(swapped, true)).second) found.push_back(std::move(swapped));
        }
      }
    }
  }
  return found;
}

/// Minimum ordered-tree distance over the cross product of both embedding sets.
inline Rational oracle_bm(const CompletedTree& a, const CompletedTree& b, const LabelAlphabet& alphabet,
                          const WeightScheme& weights, bool respect_locks, const OracleLimits& limits = {}) {
  detail::require_same_shape(a, b);
  const auto ea = enumerate_embeddings(a, respect_locks, limits);
  const auto eb = enumerate_embeddings(b, respect_locks, limits);
  return evaluate_exact(alphabet, weights, a.depth(), a.size(), [&](const auto& cost) {
    using Scalar = std::decay_t<decltype(cost(0, 0, 0))>;
    Scalar best{};
    bool first = true;
    for (const auto& x : ea) {
      for (const auto& y : eb) {
        Scalar v = detail::ordered_sum(x, y, cost);
        if (first || v < best) {
          best = v;
          first = false;
        }
      }
    }
    return best;
  });
}

inline Rational oracle_bm(const LabeledTree& a, const LabeledTree& b, const LabelAlphabet& alphabet,
                          const ComparisonOptions& options, bool respect_locks, const OracleLimits& limits = {}) {
  const Frame f = resolve_frame(a, b, options);
  return oracle_bm(complete(a, alphabet, f.level, f.arity), complete(b, alphabet, f.level, f.arity), alphabet,
                   options.weights, respect_locks, limits);
}

/// True iff some plain ordered tree is reachable from both inputs by unlocked
/// swaps (labels compared, lock marks not).
inline bool oracle_semi_equivalent(const CompletedTree& a, const CompletedTree& b, const OracleLimits& limits = {}) {
  detail::require_same_shape(a, b);
  std::unordered_set<std::string> plain;
  for (const auto& e : enumerate_embeddings(a, true, limits)) plain.insert(detail::embedding_key(e, false));
  for (const auto& e : enumerate_embeddings(b, true, limits))
    if (plain.count(detail::embedding_key(e, false))) return true;
  return false;
}

}  // namespace treemetric
