#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/error.hpp"
#include "treemetric/tree.hpp"

namespace treemetric {

/// Upper bound on vertices of a completed tree.
inline constexpr std::size_t kMaxCompletedVertices = std::size_t{1} << 26;

/// Perfect k-ary tree of depth m stored in breadth-first order.
///
/// Position p has children k*p+1 .. k*p+k, so level l occupies the contiguous
/// range [(k^l-1)/(k-1), (k^(l+1)-1)/(k-1)). The label vector is therefore the
/// label string read root-down, left-to-right.
class CompletedTree {
 public:
  CompletedTree(std::size_t arity, std::size_t depth, std::vector<LabelId> labels, std::vector<std::uint8_t> locked)
      : arity_(arity), depth_(depth), labels_(std::move(labels)), locked_(std::move(locked)) {
    if (arity_ < 2) throw ValidationError("arity must be at least 2");
    const std::size_t n = vertex_count(arity_, depth_);
    if (labels_.size() != n || locked_.size() != n) {
      throw ValidationError("completed tree storage does not match arity " + std::to_string(arity_) + " and depth " +
                            std::to_string(depth_));
    }
    for (std::size_t p = level_begin(depth_); p < n; ++p) {
      if (locked_[p]) throw ValidationError("lock mark on a leaf of a completed tree");
    }
  }

  /// (k^(m+1)-1)/(k-1); throws when the tree would exceed kMaxCompletedVertices.
  static std::size_t vertex_count(std::size_t arity, std::size_t depth) {
    std::size_t total = 0;
    std::size_t level = 1;
    for (std::size_t l = 0; l <= depth; ++l) {
      total += level;
      if (total > kMaxCompletedVertices) {
        throw ValidationError("completed tree of arity " + std::to_string(arity) + " and depth " +
                              std::to_string(depth) + " is too large");
      }
      level *= arity;
    }
    return total;
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return labels_.size(); }

  LabelId label(std::size_t pos) const { return labels_[pos]; }
  bool locked(std::size_t pos) const { return locked_[pos] != 0; }
  std::size_t child(std::size_t pos, std::size_t j) const { return pos * arity_ + 1 + j; }

  std::size_t level_begin(std::size_t level) const {
    std::size_t begin = 0;
    std::size_t width = 1;
    for (std::size_t l = 0; l < level; ++l) {
      begin += width;
      width *= arity_;
    }
    return begin;
  }

  std::size_t position(std::size_t level, std::size_t index) const { return level_begin(level) + index; }

  std::size_t level_of(std::size_t pos) const {
    std::size_t level = 0;
    std::size_t next = 1;
    std::size_t width = 1;
    while (pos >= next) {
      width *= arity_;
      next += width;
      ++level;
    }
    return level;
  }

  std::span<const LabelId> labels() const noexcept { return labels_; }
  std::span<const std::uint8_t> lock_flags() const noexcept { return locked_; }

  bool has_locks() const {
    for (auto f : locked_)
      if (f) return true;
    return false;
  }

  /// Breadth-first label string of the subtree rooted at `pos`.
  std::vector<LabelId> subtree_labels(std::size_t pos) const {
    std::vector<LabelId> out;
    std::size_t first = pos;
    std::size_t width = 1;
    for (std::size_t l = level_of(pos); l <= depth_; ++l) {
      out.insert(out.end(), labels_.begin() + static_cast<std::ptrdiff_t>(first),
                 labels_.begin() + static_cast<std::ptrdiff_t>(first + width));
      first = first * arity_ + 1;
      width *= arity_;
    }
    return out;
  }

  friend bool operator==(const CompletedTree&, const CompletedTree&) = default;

 private:
  std::size_t arity_;
  std::size_t depth_;
  std::vector<LabelId> labels_;
  std::vector<std::uint8_t> locked_;
};

/// Level-m completion to a perfect k-ary tree. Missing children are appended on
/// the right as unlocked null-labeled vertices; original vertices keep their
/// labels, positions and lock marks.
inline CompletedTree complete(const LabeledTree& tree, const LabelAlphabet& alphabet, std::size_t level,
                              std::size_t arity) {
  if (level < tree.depth()) {
    throw ValidationError("completion level " + std::to_string(level) + " is below the tree depth " +
                          std::to_string(tree.depth()));
  }
  if (arity < 2) throw ValidationError("arity must be at least 2");
  if (arity < tree.max_branching()) {
    throw ValidationError("arity " + std::to_string(arity) + " is below the observed branching factor " +
                          std::to_string(tree.max_branching()));
  }
  const std::size_t n = CompletedTree::vertex_count(arity, level);
  std::vector<LabelId> labels(n, alphabet.null_id());
  std::vector<std::uint8_t> locked(n, 0);
  auto place = [&](auto&& self, const LabeledTree& v, std::size_t pos) -> void {
    labels[pos] = alphabet.id(v.label());
    locked[pos] = v.locked() ? 1 : 0;
    for (std::size_t j = 0; j < v.children().size(); ++j) self(self, v.children()[j], pos * arity + 1 + j);
  };
  place(place, tree, 0);
  return CompletedTree(arity, level, std::move(labels), std::move(locked));
}

/// Breadth-first label sequence; the storage order of CompletedTree.
inline std::vector<LabelId> label_string(const CompletedTree& tree) {
  return {tree.labels().begin(), tree.labels().end()};
}

/// Renders a label sequence. Labels are concatenated when all are single
/// characters ("XYZNNYZ"), space separated otherwise.
inline std::string label_string_text(std::span<const LabelId> labels, const LabelAlphabet& alphabet) {
  bool single = true;
  for (auto id : labels) single = single && alphabet.name(id).size() == 1;
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i && !single) out += ' ';
    out += alphabet.name(labels[i]);
  }
  return out;
}

inline std::string label_string_text(const CompletedTree& tree, const LabelAlphabet& alphabet) {
  return label_string_text(tree.labels(), alphabet);
}

/// Converts back to a LabeledTree, keeping the null-labeled padding vertices.
inline LabeledTree to_labeled_tree(const CompletedTree& tree, const LabelAlphabet& alphabet) {
  auto build = [&](auto&& self, std::size_t pos, std::size_t level) -> LabeledTree {
    std::vector<LabeledTree> kids;
    if (level < tree.depth()) {
      kids.reserve(tree.arity());
      for (std::size_t j = 0; j < tree.arity(); ++j) kids.push_back(self(self, tree.child(pos, j), level + 1));
    }
    return LabeledTree(alphabet.name(tree.label(pos)), tree.locked(pos), std::move(kids));
  };
  return build(build, 0, 0);
}

/// Tree text of a completed tree, padding vertices printed as "N".
inline std::string to_string(const CompletedTree& tree, const LabelAlphabet& alphabet) {
  return to_string(to_labeled_tree(tree, alphabet));
}

}  // namespace treemetric
