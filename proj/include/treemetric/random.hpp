#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/error.hpp"
#include "treemetric/rational.hpp"
#include "treemetric/tree.hpp"

namespace treemetric {

struct RandomTreeParams {
  std::uint64_t seed = 0;
  std::size_t max_depth = 3;
  std::size_t arity = 2;
  double lock_probability = 0.0;
};

namespace detail {

inline std::vector<LabelId> drawable_labels(const LabelAlphabet& alphabet) {
  std::vector<LabelId> out;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (static_cast<LabelId>(i) != alphabet.null_id()) out.push_back(static_cast<LabelId>(i));
  if (out.empty()) throw ValidationError("cannot draw labels from an alphabet without non-null members");
  return out;
}

}  // namespace detail

/// Random tree, deterministic per seed.
///
/// Each vertex gets a uniform non-null label. Below max_depth every one of the
/// k potential children exists independently with probability 1/2; the root is
/// given at least one child whenever max_depth > 0. Every vertex that ends up
/// with children is locked with probability lock_probability.
inline LabeledTree random_tree(const RandomTreeParams& params, const LabelAlphabet& alphabet) {
  if (params.arity < 1) throw ValidationError("arity must be positive");
  if (params.lock_probability < 0.0 || params.lock_probability > 1.0) {
    throw ValidationError("lock probability must lie in [0, 1]");
  }
  const auto labels = detail::drawable_labels(alphabet);
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  std::bernoulli_distribution exists(0.5);
  std::bernoulli_distribution lock(params.lock_probability);

  auto grow = [&](auto&& self, std::size_t depth) -> LabeledTree {
    std::string label = alphabet.name(labels[pick(rng)]);
    std::vector<LabeledTree> kids;
    if (depth < params.max_depth) {
      for (std::size_t j = 0; j < params.arity; ++j)
        if (exists(rng)) kids.push_back(self(self, depth + 1));
      if (kids.empty() && depth == 0) kids.push_back(self(self, depth + 1));
    }
    const bool locked = !kids.empty() && lock(rng);
    return LabeledTree(std::move(label), locked, std::move(kids));
  };
  return grow(grow, 0);
}

enum class LabelMode { uniform, constant };

/// Perfect k-ary tree of the given depth with uniform labels (or every label
/// equal to the first non-null member), each internal vertex locked with
/// probability lock_probability.
inline CompletedTree random_perfect_tree(std::uint64_t seed, std::size_t depth, std::size_t arity,
                                         const LabelAlphabet& alphabet, LabelMode mode = LabelMode::uniform,
                                         double lock_probability = 0.0) {
  const auto labels = detail::drawable_labels(alphabet);
  const std::size_t n = CompletedTree::vertex_count(arity, depth);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  std::bernoulli_distribution lock(lock_probability);
  std::vector<LabelId> ids(n);
  std::vector<std::uint8_t> locked(n, 0);
  std::size_t leaves_begin = 0;
  for (std::size_t l = 0, w = 1; l < depth; ++l, w *= arity) leaves_begin += w;
  for (std::size_t p = 0; p < n; ++p) {
    ids[p] = mode == LabelMode::uniform ? labels[pick(rng)] : labels.front();
    if (p < leaves_begin && lock_probability > 0.0) locked[p] = lock(rng) ? 1 : 0;
  }
  return CompletedTree(arity, depth, std::move(ids), std::move(locked));
}

/// Random label metric: positive integer edge weights in [1, max_weight]
/// between every pair, closed under shortest paths so the triangle
/// inequality holds. Row-major over the alphabet's ids, ready for set_metric.
inline std::vector<Rational> random_label_metric(std::uint64_t seed, const LabelAlphabet& alphabet,
                                                 int max_weight = 4) {
  const std::size_t n = alphabet.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<long long> d(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) d[a * n + b] = d[b * n + a] = weight(rng);
  for (std::size_t via = 0; via < n; ++via)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) d[a * n + b] = std::min(d[a * n + b], d[a * n + via] + d[via * n + b]);
  std::vector<Rational> out;
  out.reserve(d.size());
  for (auto v : d) out.emplace_back(v);
  return out;
}

}  // namespace treemetric
