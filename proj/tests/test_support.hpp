#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "treemetric/treemetric.hpp"

namespace treemetric::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TREEMETRIC_FIXTURE_DIR) + "/" + name; }

inline LabeledTree fixture(const std::string& name) {
  std::ifstream in(fixture_path(name + ".tree"));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tree(ss.str());
}

/// Order N>X>Y>Z, i.e. ascending Z<Y<X<N.
inline LabelAlphabet xyz_alphabet() { return LabelAlphabet::from_order({"Z", "Y", "X", "N"}); }

/// Ascending Z<X<W<S, N appended as greatest.
inline LabelAlphabet zxws_alphabet() { return LabelAlphabet::from_order({"Z", "X", "W", "S"}); }

/// Completed tree from a breadth-first string of single-character labels.
inline CompletedTree from_label_string(const std::string& text, const LabelAlphabet& alphabet, std::size_t arity = 2) {
  std::vector<LabelId> ids;
  for (char c : text) ids.push_back(alphabet.id(std::string(1, c)));
  std::size_t depth = 0;
  while (CompletedTree::vertex_count(arity, depth) < ids.size()) ++depth;
  std::vector<std::uint8_t> locked(ids.size(), 0);
  return CompletedTree(arity, depth, std::move(ids), std::move(locked));
}

/// Applies `swaps` random child swaps at random internal vertices, optionally
/// only at unlocked ones.
inline LabeledTree random_swaps(const LabeledTree& t, std::mt19937_64& rng, int swaps, bool unlocked_only = false) {
  LabeledTree out = t;
  for (int s = 0; s < swaps; ++s) {
    std::vector<VertexPath> internal;
    for (auto& p : vertex_paths(out)) {
      const auto& v = out.at(p);
      if (v.children().size() >= 2 && !(unlocked_only && v.locked())) internal.push_back(p);
    }
    if (internal.empty()) return out;
    const auto& path = internal[std::uniform_int_distribution<std::size_t>(0, internal.size() - 1)(rng)];
    const std::size_t k = out.at(path).children().size();
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) j = (i + 1) % k;
    out = swap_children(out, path, i, j);
  }
  return out;
}

/// Random unlocked tree over X, Y, Z.
inline LabeledTree random_xyz(std::uint64_t seed, std::size_t max_depth, std::size_t arity = 2,
                              double lock_probability = 0.0) {
  static const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  RandomTreeParams p;
  p.seed = seed;
  p.max_depth = max_depth;
  p.arity = arity;
  p.lock_probability = lock_probability;
  return random_tree(p, alphabet);
}

/// Copy of `t` with the label at `path` replaced.
inline LabeledTree relabel(const LabeledTree& t, const VertexPath& path, const std::string& label,
                           std::size_t at = 0) {
  if (at == path.size()) return LabeledTree(label, t.locked(), t.children());
  auto kids = t.children();
  kids[path[at]] = relabel(kids[path[at]], path, label, at + 1);
  return LabeledTree(t.label(), t.locked(), std::move(kids));
}

/// Copy of `t` with the lock mark at `path` set to `locked`.
inline LabeledTree relock(const LabeledTree& t, const VertexPath& path, bool locked, std::size_t at = 0) {
  if (at == path.size()) return LabeledTree(t.label(), locked, t.children());
  auto kids = t.children();
  kids[path[at]] = relock(kids[path[at]], path, locked, at + 1);
  return LabeledTree(t.label(), t.locked(), std::move(kids));
}

}  // namespace treemetric::testing
