#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/ordered_metric.hpp"
#include "treemetric/report.hpp"

namespace treemetric {

/// Lexicographic order on equal-length label strings. Label ids ascend with
/// the alphabet's total order, so ids compare directly.
inline std::strong_ordering lex_compare(std::span<const LabelId> s1, std::span<const LabelId> s2) {
  if (s1.size() != s2.size()) {
    throw ValidationError("label strings differ in length (" + std::to_string(s1.size()) + " vs " +
                          std::to_string(s2.size()) + ")");
  }
  return std::lexicographical_compare_three_way(s1.begin(), s1.end(), s2.begin(), s2.end());
}

inline std::strong_ordering lex_compare(const std::vector<std::string>& s1, const std::vector<std::string>& s2,
                                        const LabelAlphabet& alphabet) {
  std::vector<LabelId> a, b;
  for (const auto& l : s1) a.push_back(alphabet.id(l));
  for (const auto& l : s2) b.push_back(alphabet.id(l));
  return lex_compare(a, b);
}

/// Called after the children of every vertex on `level` have been sorted.
using LevelObserver = std::function<void(std::size_t level, const CompletedTree& snapshot)>;

namespace detail {

/// Sorts children bottom-up without moving subtree storage: each internal
/// vertex keeps a slot table naming which original child sits where, and
/// subtrees are compared by walking both breadth-first in lockstep until the
/// first differing label.
class LeftRegularizer {
 public:
  explicit LeftRegularizer(const CompletedTree& tree)
      : tree_(tree), k_(tree.arity()), internal_(tree.level_begin(tree.depth())), slots_(internal_ * k_) {
    for (std::size_t p = 0; p < internal_; ++p)
      for (std::size_t j = 0; j < k_; ++j) slots_[p * k_ + j] = static_cast<Index>(tree_.child(p, j));
  }

  CompletedTree run(const LevelObserver& observer) {
    for (std::size_t level = tree_.depth(); level-- > 0;) {
      const std::size_t begin = tree_.level_begin(level);
      const std::size_t end = tree_.level_begin(level + 1);
      for (std::size_t p = begin; p < end; ++p) sort_children(p);
      if (observer) observer(level, materialize());
    }
    return materialize();
  }

 private:
  // Stable insertion sort; equal subtrees keep their relative order.
  void sort_children(std::size_t p) {
    Index* s = slots_.data() + p * k_;
    for (std::size_t i = 1; i < k_; ++i) {
      const Index moving = s[i];
      std::size_t j = i;
      while (j > 0 && compare(s[j - 1], moving) > 0) {
        s[j] = s[j - 1];
        --j;
      }
      s[j] = moving;
    }
  }

  std::strong_ordering compare(std::size_t u, std::size_t v) {
    queue_a_.clear();
    queue_b_.clear();
    queue_a_.push_back(static_cast<Index>(u));
    queue_b_.push_back(static_cast<Index>(v));
    for (std::size_t head = 0; head < queue_a_.size(); ++head) {
      const std::size_t x = queue_a_[head];
      const std::size_t y = queue_b_[head];
      if (auto c = tree_.label(x) <=> tree_.label(y); c != 0) return c;
      if (x < internal_) {
        queue_a_.insert(queue_a_.end(), slots_.begin() + static_cast<std::ptrdiff_t>(x * k_),
                        slots_.begin() + static_cast<std::ptrdiff_t>(x * k_ + k_));
        queue_b_.insert(queue_b_.end(), slots_.begin() + static_cast<std::ptrdiff_t>(y * k_),
                        slots_.begin() + static_cast<std::ptrdiff_t>(y * k_ + k_));
      }
    }
    return std::strong_ordering::equal;
  }

  CompletedTree materialize() const {
    const std::size_t n = tree_.size();
    std::vector<LabelId> labels(n);
    std::vector<std::uint8_t> locked(n);
    // Output position q holds original vertex order[q]; BFS order makes this a single pass.
    std::vector<Index> order(n);
    order[0] = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t src = order[q];
      labels[q] = tree_.label(src);
      locked[q] = tree_.locked(src);
      if (q < internal_) {
        for (std::size_t j = 0; j < k_; ++j) order[q * k_ + 1 + j] = slots_[src * k_ + j];
      }
    }
    return CompletedTree(k_, tree_.depth(), std::move(labels), std::move(locked));
  }

  // Vertex counts stay below kMaxCompletedVertices, so 32 bits suffice.
  using Index = std::uint32_t;

  const CompletedTree& tree_;
  std::size_t k_;
  std::size_t internal_;
  std::vector<Index> slots_;
  std::vector<Index> queue_a_;
  std::vector<Index> queue_b_;
};

}  // namespace detail

/// Canonical representative of the tree's equivalence class: from the deepest
/// internal level up to the root, each vertex's children are sorted ascending
/// by subtree label string. Lock marks travel with their vertices but are
/// otherwise ignored.
inline CompletedTree left_regularize(const CompletedTree& tree, const LevelObserver& observer = {}) {
  return detail::LeftRegularizer(tree).run(observer);
}

inline CompletedTree left_regularize(const LabeledTree& tree, const LabelAlphabet& alphabet, std::size_t level,
                                     std::size_t arity, const LevelObserver& observer = {}) {
  return left_regularize(complete(tree, alphabet, level, arity), observer);
}

/// Left-regular metric: ordered-tree distance between the two canonical forms.
/// The value depends on the alphabet's total order, which the report records.
inline DistanceReport d_lr(const CompletedTree& a, const CompletedTree& b, const LabelAlphabet& alphabet,
                           const WeightScheme& weights = WeightScheme::constant()) {
  detail::require_same_shape(a, b);
  DistanceReport r = d_ot(left_regularize(a), left_regularize(b), alphabet, weights);
  r.metric = "lr";
  r.order = alphabet.order_description();
  r.notes.push_back("both inputs left-regularized");
  if (a.has_locks() || b.has_locks()) r.notes.push_back("lock marks ignored");
  return r;
}

inline DistanceReport d_lr(const LabeledTree& a, const LabeledTree& b, const LabelAlphabet& alphabet,
                           const ComparisonOptions& options = {}) {
  const Frame f = resolve_frame(a, b, options);
  return d_lr(complete(a, alphabet, f.level, f.arity), complete(b, alphabet, f.level, f.arity), alphabet,
              options.weights);
}

}  // namespace treemetric
