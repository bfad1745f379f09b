#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treemetric/rational.hpp"
#include "treemetric/report.hpp"
#include "treemetric/tree.hpp"

// Bottom-up and subtree distances. Both count vertices in the raw, uncompleted
// trees and only ever match complete subtrees (a vertex with all descendants).
// The search below is exhaustive and meant for small trees.

namespace treemetric {

/// Isomorphism key for rooted unordered labeled trees: own label followed by
/// the sorted child codes. Lock marks do not participate.
inline std::string canonical_code(const LabeledTree& tree) {
  std::vector<std::string> kids;
  kids.reserve(tree.children().size());
  for (const auto& c : tree.children()) kids.push_back(canonical_code(c));
  std::sort(kids.begin(), kids.end());
  std::string out = tree.label();
  if (!kids.empty()) {
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out += ',';
      out += kids[i];
    }
    out += ')';
  }
  return out;
}

struct CommonStructureResult {
  std::size_t f = 0;
  /// Roots of matched subtrees: (vertex in the first tree, vertex in the second).
  std::vector<std::pair<VertexPath, VertexPath>> matched_pairs;
};

namespace detail {

struct FlatVertex {
  VertexPath path;
  std::string code;
  std::size_t size;
};

/// Vertices in preorder; the subtree of vertex i spans [i, i + size).
inline std::vector<FlatVertex> flatten(const LabeledTree& tree) {
  std::vector<FlatVertex> out;
  VertexPath path;
  auto walk = [&](auto&& self, const LabeledTree& v) -> std::string {
    const std::size_t index = out.size();
    out.push_back({path, {}, 0});
    std::vector<std::string> kids;
    for (std::size_t i = 0; i < v.children().size(); ++i) {
      path.push_back(i);
      kids.push_back(self(self, v.children()[i]));
      path.pop_back();
    }
    std::sort(kids.begin(), kids.end());
    std::string code = v.label();
    if (!kids.empty()) {
      code += '(';
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) code += ',';
        code += kids[i];
      }
      code += ')';
    }
    out[index].code = code;
    out[index].size = out.size() - index;
    return code;
  };
  walk(walk, tree);
  return out;
}

/// Branching search over the first tree's preorder: either match vertex i's
/// whole subtree to a free isomorphic subtree of the second tree, or descend.
/// Memoized on (i, occupied vertices of the second tree).
class CommonForestSearch {
 public:
  CommonForestSearch(std::vector<FlatVertex> a, std::vector<FlatVertex> b)
      : a_(std::move(a)), b_(std::move(b)), candidates_(a_.size()), memo_(a_.size()) {
    for (std::size_t i = 0; i < a_.size(); ++i)
      for (std::size_t w = 0; w < b_.size(); ++w)
        if (a_[i].code == b_[w].code) candidates_[i].push_back(w);
  }

  CommonStructureResult solve() {
    std::vector<bool> used(b_.size(), false);
    CommonStructureResult result;
    result.f = best(0, used);
    // Replay the decisions that realize the optimum.
    std::size_t i = 0;
    std::size_t remaining = result.f;
    while (i < a_.size() && remaining > 0) {
      if (best(i + 1, used) == remaining) {
        ++i;
        continue;
      }
      for (std::size_t w : candidates_[i]) {
        if (!is_free(used, w)) continue;
        auto next = occupy(used, w);
        if (a_[i].size + best(i + a_[i].size, next) == remaining) {
          result.matched_pairs.emplace_back(a_[i].path, b_[w].path);
          remaining -= a_[i].size;
          used = std::move(next);
          i += a_[i].size;
          break;
        }
      }
    }
    return result;
  }

 private:
  bool is_free(const std::vector<bool>& used, std::size_t w) const {
    for (std::size_t x = w; x < w + b_[w].size; ++x)
      if (used[x]) return false;
    return true;
  }

  std::vector<bool> occupy(const std::vector<bool>& used, std::size_t w) const {
    std::vector<bool> next = used;
    for (std::size_t x = w; x < w + b_[w].size; ++x) next[x] = true;
    return next;
  }

  std::size_t best(std::size_t i, const std::vector<bool>& used) {
    if (i >= a_.size()) return 0;
    if (auto it = memo_[i].find(used); it != memo_[i].end()) return it->second;
    std::size_t value = best(i + 1, used);
    for (std::size_t w : candidates_[i]) {
      if (!is_free(used, w)) continue;
      value = std::max(value, a_[i].size + best(i + a_[i].size, occupy(used, w)));
    }
    memo_[i].emplace(used, value);
    return value;
  }

  std::vector<FlatVertex> a_;
  std::vector<FlatVertex> b_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::unordered_map<std::vector<bool>, std::size_t>> memo_;
};

inline DistanceReport baseline_report(std::string name, std::size_t f, std::size_t n1, std::size_t n2,
                                      bool locks) {
  DistanceReport r;
  r.metric = std::move(name);
  r.value = Rational(1) - Rational(static_cast<long long>(f), static_cast<long long>(std::max(n1, n2)));
  r.common_size = f;
  r.n1 = n1;
  r.n2 = n2;
  if (locks) r.notes.push_back("lock marks ignored");
  return r;
}

}  // namespace detail

/// Largest total size of vertex-disjoint complete subtrees of `a` matched
/// one-to-one with vertex-disjoint isomorphic complete subtrees of `b`.
inline CommonStructureResult largest_common_forest(const LabeledTree& a, const LabeledTree& b) {
  return detail::CommonForestSearch(detail::flatten(a), detail::flatten(b)).solve();
}

/// Size of the largest complete subtree occurring (up to child order) in both trees; 0 if none.
inline CommonStructureResult largest_common_subtree(const LabeledTree& a, const LabeledTree& b) {
  const auto fa = detail::flatten(a);
  const auto fb = detail::flatten(b);
  CommonStructureResult result;
  for (const auto& va : fa) {
    if (va.size <= result.f) continue;
    for (const auto& vb : fb) {
      if (va.code == vb.code) {
        result.f = va.size;
        result.matched_pairs = {{va.path, vb.path}};
        break;
      }
    }
  }
  return result;
}

/// 1 - f / max(n1, n2) with f the largest common forest.
inline DistanceReport d_bu(const LabeledTree& a, const LabeledTree& b) {
  return detail::baseline_report("bu", largest_common_forest(a, b).f, a.size(), b.size(),
                                 a.has_locks() || b.has_locks());
}

/// 1 - f / max(n1, n2) with f the largest common subtree.
inline DistanceReport d_st(const LabeledTree& a, const LabeledTree& b) {
  return detail::baseline_report("st", largest_common_subtree(a, b).f, a.size(), b.size(),
                                 a.has_locks() || b.has_locks());
}

}  // namespace treemetric
