#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/cost_table.hpp"
#include "treemetric/ordered_metric.hpp"
#include "treemetric/report.hpp"

namespace treemetric {

/// Best-match enumerates all k! child correspondences per vertex pair.
inline constexpr std::size_t kMaxBestMatchArity = 8;

namespace detail {

/// All permutations of 0..k-1 in lexicographic order; the identity comes first.
inline std::vector<std::vector<std::uint8_t>> child_permutations(std::size_t k) {
  std::vector<std::uint8_t> p(k);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  std::vector<std::vector<std::uint8_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Recursive best-match evaluation without memoization: every pair of
/// same-level child subtrees is visited once per call, k^2 calls per step.
template <class Scalar>
class BestMatchSolver {
 public:
  BestMatchSolver(const CompletedTree& a, const CompletedTree& b, const CostTable<Scalar>& cost, bool respect_locks)
      : a_(a), b_(b), cost_(cost), respect_locks_(respect_locks), k_(a.arity()),
        perms_(child_permutations(a.arity())) {}

  Scalar solve(std::size_t pa, std::size_t pb, std::size_t level) const {
    Scalar root = cost_(level, a_.label(pa), b_.label(pb));
    if (level == a_.depth()) return root;
    if (respect_locks_ && a_.locked(pa) && b_.locked(pb)) {
      for (std::size_t j = 0; j < k_; ++j) root += solve(a_.child(pa, j), b_.child(pb, j), level + 1);
      return root;
    }
    Scalar pair[kMaxBestMatchArity * kMaxBestMatchArity];
    child_pairs(pa, pb, level, pair);
    return root + best_permutation(pair).second;
  }

  /// Fills pair[i*k+j] with solve(child i of pa, child j of pb).
  void child_pairs(std::size_t pa, std::size_t pb, std::size_t level, Scalar* pair) const {
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) pair[i * k_ + j] = solve(a_.child(pa, i), b_.child(pb, j), level + 1);
  }

  /// Cheapest permutation (index, cost); the earliest wins ties.
  std::pair<std::size_t, Scalar> best_permutation(const Scalar* pair) const {
    std::size_t best_index = 0;
    Scalar best{};
    for (std::size_t p = 0; p < perms_.size(); ++p) {
      Scalar sum = pair[perms_[p][0]];
      for (std::size_t i = 1; i < k_; ++i) sum += pair[i * k_ + perms_[p][i]];
      if (p == 0 || sum < best) {
        best = sum;
        best_index = p;
      }
    }
    return {best_index, best};
  }

  const std::vector<std::uint8_t>& permutation(std::size_t index) const { return perms_[index]; }
  bool respect_locks() const noexcept { return respect_locks_; }

 private:
  const CompletedTree& a_;
  const CompletedTree& b_;
  const CostTable<Scalar>& cost_;
  bool respect_locks_;
  std::size_t k_;
  std::vector<std::vector<std::uint8_t>> perms_;
};

inline void require_best_match_arity(std::size_t k) {
  if (k > kMaxBestMatchArity) {
    throw ValidationError("arity " + std::to_string(k) + " exceeds the best-match permutation cap of " +
                          std::to_string(kMaxBestMatchArity));
  }
}

inline Rational best_match_value(const CompletedTree& a, const CompletedTree& b, const LabelAlphabet& alphabet,
                                 const WeightScheme& weights, bool respect_locks) {
  require_same_shape(a, b);
  require_alphabet(a, alphabet);
  require_alphabet(b, alphabet);
  require_best_match_arity(a.arity());
  return evaluate_exact(alphabet, weights, a.depth(), a.size(), [&](const auto& cost) {
    BestMatchSolver solver(a, b, cost, respect_locks);
    return solver.solve(0, 0, 0);
  });
}

inline DistanceReport best_match_report(std::string name, Rational value, const CompletedTree& a,
                                        const LabelAlphabet& alphabet, const WeightScheme& weights) {
  DistanceReport r;
  r.metric = std::move(name);
  r.value = std::move(value);
  r.level = a.depth();
  r.arity = a.arity();
  r.weights = weights.describe();
  r.label_metric = alphabet.metric_name();
  return r;
}

}  // namespace detail

/// Best-match metric: the smallest ordered-tree distance over all planar
/// embeddings of both trees. Lock marks are ignored.
inline DistanceReport d_bm(const CompletedTree& a, const CompletedTree& b, const LabelAlphabet& alphabet,
                           const WeightScheme& weights = WeightScheme::constant()) {
  auto r = detail::best_match_report("bm", detail::best_match_value(a, b, alphabet, weights, false), a, alphabet,
                                     weights);
  if (a.has_locks() || b.has_locks()) r.notes.push_back("lock marks ignored");
  return r;
}

inline DistanceReport d_bm(const LabeledTree& a, const LabeledTree& b, const LabelAlphabet& alphabet,
                           const ComparisonOptions& options = {}) {
  const Frame f = resolve_frame(a, b, options);
  detail::require_best_match_arity(f.arity);
  return d_bm(complete(a, alphabet, f.level, f.arity), complete(b, alphabet, f.level, f.arity), alphabet,
              options.weights);
}

/// Best-match semimetric: as d_bm, but where both current roots carry a lock
/// mark only the identity child correspondence is allowed.
inline DistanceReport d_bm_star(const CompletedTree& a, const CompletedTree& b, const LabelAlphabet& alphabet,
                                const WeightScheme& weights = WeightScheme::constant()) {
  return detail::best_match_report("bmstar", detail::best_match_value(a, b, alphabet, weights, true), a, alphabet,
                                   weights);
}

inline DistanceReport d_bm_star(const LabeledTree& a, const LabeledTree& b, const LabelAlphabet& alphabet,
                                const ComparisonOptions& options = {}) {
  const Frame f = resolve_frame(a, b, options);
  detail::require_best_match_arity(f.arity);
  return d_bm_star(complete(a, alphabet, f.level, f.arity), complete(b, alphabet, f.level, f.arity), alphabet,
                   options.weights);
}

/// An optimal pair of embeddings: d_ot(first, second) equals the best-match value.
struct BestMatchWitness {
  CompletedTree first;
  CompletedTree second;
  Rational value;
};

/// Reconstructs one optimal correspondence top-down, preferring the identity on ties.
/// The second tree is rearranged unless locks forbid it, in which case the first one is.
inline BestMatchWitness best_match_witness(const CompletedTree& a, const CompletedTree& b,
                                           const LabelAlphabet& alphabet,
                                           const WeightScheme& weights = WeightScheme::constant(),
                                           bool respect_locks = false) {
  detail::require_same_shape(a, b);
  detail::require_alphabet(a, alphabet);
  detail::require_alphabet(b, alphabet);
  detail::require_best_match_arity(a.arity());

  const std::size_t n = a.size();
  const std::size_t k = a.arity();
  std::vector<LabelId> la(n), lb(n);
  std::vector<std::uint8_t> ka(n), kb(n);

  Rational value = evaluate_exact(alphabet, weights, a.depth(), n, [&](const auto& cost) {
    using Scalar = std::decay_t<decltype(cost(0, 0, 0))>;
    detail::BestMatchSolver<Scalar> solver(a, b, cost, respect_locks);
    auto place = [&](auto&& self, std::size_t pa, std::size_t pb, std::size_t dst, std::size_t level) -> void {
      la[dst] = a.label(pa);
      ka[dst] = a.locked(pa);
      lb[dst] = b.label(pb);
      kb[dst] = b.locked(pb);
      if (level == a.depth()) return;
      std::vector<std::uint8_t> perm(k);
      std::iota(perm.begin(), perm.end(), std::uint8_t{0});
      if (!(respect_locks && a.locked(pa) && b.locked(pb))) {
        Scalar pair[kMaxBestMatchArity * kMaxBestMatchArity];
        solver.child_pairs(pa, pb, level, pair);
        perm = solver.permutation(solver.best_permutation(pair).first);
      }
      const bool move_second = !respect_locks || !b.locked(pb);
      for (std::size_t slot = 0; slot < k; ++slot) {
        const std::size_t out = dst * k + 1 + slot;
        if (move_second) {
          self(self, a.child(pa, slot), b.child(pb, perm[slot]), out, level + 1);
        } else {
          const auto src = static_cast<std::size_t>(std::find(perm.begin(), perm.end(), slot) - perm.begin());
          self(self, a.child(pa, src), b.child(pb, slot), out, level + 1);
        }
      }
    };
    place(place, 0, 0, 0, 0);
    return solver.solve(0, 0, 0);
  });

  return {CompletedTree(k, a.depth(), std::move(la), std::move(ka)),
          CompletedTree(k, a.depth(), std::move(lb), std::move(kb)), std::move(value)};
}

/// True iff one tree can be turned into the other by swapping subtrees (locks ignored).
inline bool equivalent(const LabeledTree& a, const LabeledTree& b) {
  const LabeledTree both[] = {a, b};
  const auto alphabet = LabelAlphabet::default_for(both);
  return d_bm(a, b, alphabet).value == 0;
}

/// True iff unlocked swaps in each tree can reach a common plain ordered tree.
inline bool semi_equivalent(const LabeledTree& a, const LabeledTree& b) {
  const LabeledTree both[] = {a, b};
  const auto alphabet = LabelAlphabet::default_for(both);
  return d_bm_star(a, b, alphabet).value == 0;
}

}  // namespace treemetric
