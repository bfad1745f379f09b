#pragma once

#include <cstddef>
#include <string>

#include "treemetric/alphabet.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/cost_table.hpp"
#include "treemetric/report.hpp"
#include "treemetric/weights.hpp"

namespace treemetric {

namespace detail {

inline void require_same_shape(const CompletedTree& a, const CompletedTree& b) {
  if (a.arity() != b.arity() || a.depth() != b.depth()) {
    throw ValidationError("trees differ in shape: arity " + std::to_string(a.arity()) + "/" +
                          std::to_string(b.arity()) + ", depth " + std::to_string(a.depth()) + "/" +
                          std::to_string(b.depth()) + "; complete both to a common level first");
  }
}

inline void require_alphabet(const CompletedTree& t, const LabelAlphabet& alphabet) {
  for (auto id : t.labels()) {
    if (id >= alphabet.size()) throw ValidationError("label id " + std::to_string(id) + " is outside the alphabet");
  }
}

template <class Scalar>
Scalar ordered_sum(const CompletedTree& a, const CompletedTree& b, const CostTable<Scalar>& cost) {
  Scalar total{};
  std::size_t begin = 0;
  std::size_t width = 1;
  for (std::size_t level = 0; level <= a.depth(); ++level) {
    for (std::size_t p = begin; p < begin + width; ++p) total += cost(level, a.label(p), b.label(p));
    begin += width;
    width *= a.arity();
  }
  return total;
}

}  // namespace detail

/// Ordered tree metric: sum over corresponding positions of c(depth) * d(label1, label2).
inline DistanceReport d_ot(const CompletedTree& a, const CompletedTree& b, const LabelAlphabet& alphabet,
                           const WeightScheme& weights = WeightScheme::constant()) {
  detail::require_same_shape(a, b);
  detail::require_alphabet(a, alphabet);
  detail::require_alphabet(b, alphabet);
  DistanceReport r;
  r.metric = "ot";
  r.value = evaluate_exact(alphabet, weights, a.depth(), a.size(),
                           [&](const auto& cost) { return detail::ordered_sum(a, b, cost); });
  r.level = a.depth();
  r.arity = a.arity();
  r.weights = weights.describe();
  r.label_metric = alphabet.metric_name();
  return r;
}

/// Completes both trees to their common frame, then compares positionally.
inline DistanceReport d_ot(const LabeledTree& a, const LabeledTree& b, const LabelAlphabet& alphabet,
                           const ComparisonOptions& options = {}) {
  const Frame f = resolve_frame(a, b, options);
  return d_ot(complete(a, alphabet, f.level, f.arity), complete(b, alphabet, f.level, f.arity), alphabet,
              options.weights);
}

}  // namespace treemetric
