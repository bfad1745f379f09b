#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treemetric/rational.hpp"
#include "treemetric/tree.hpp"
#include "treemetric/weights.hpp"

namespace treemetric {

/// A distance value together with every parameter that produced it.
struct DistanceReport {
  std::string metric;
  Rational value;
  std::optional<std::size_t> level;
  std::optional<std::size_t> arity;
  std::optional<std::string> weights;
  std::optional<std::string> order;
  std::optional<std::string> label_metric;
  // Baselines only: matched vertex count and raw tree sizes.
  std::optional<std::size_t> common_size;
  std::optional<std::size_t> n1;
  std::optional<std::size_t> n2;
  // Canonicalization and other steps applied to the inputs.
  std::vector<std::string> notes;
};

/// `key: value` lines in a fixed order; absent fields are omitted.
inline std::string to_key_value(const DistanceReport& r, bool decimal = false) {
  std::string out;
  auto line = [&](const char* key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  line("metric", r.metric);
  line("value", decimal ? format_decimal(r.value) : format_exact(r.value));
  if (r.level) line("level", std::to_string(*r.level));
  if (r.arity) line("arity", std::to_string(*r.arity));
  if (r.weights) line("weights", *r.weights);
  if (r.order) line("order", *r.order);
  if (r.label_metric) line("label_metric", *r.label_metric);
  if (r.common_size) line("common_size", std::to_string(*r.common_size));
  if (r.n1) line("n1", std::to_string(*r.n1));
  if (r.n2) line("n2", std::to_string(*r.n2));
  for (const auto& n : r.notes) line("note", n);
  return out;
}

/// Optional overrides for two-tree comparisons.
struct ComparisonOptions {
  std::optional<std::size_t> level;
  std::optional<std::size_t> arity;
  WeightScheme weights = WeightScheme::constant();
};

/// Common completion level and arity for a pair of trees.
struct Frame {
  std::size_t level;
  std::size_t arity;
};

/// Level defaults to the larger depth, arity to the larger branching factor (at least 2).
inline Frame resolve_frame(const LabeledTree& a, const LabeledTree& b, const ComparisonOptions& options = {}) {
  Frame f{};
  f.level = options.level.value_or(std::max(a.depth(), b.depth()));
  f.arity = options.arity.value_or(std::max<std::size_t>({2, a.max_branching(), b.max_branching()}));
  return f;
}

}  // namespace treemetric
