#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treemetric/error.hpp"

namespace treemetric {

/// Token reserved for padding vertices introduced by completion.
inline constexpr std::string_view kNullLabel = "N";

inline bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_valid_label(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), is_label_char);
}

/// Path from the root to a vertex, as successive child indices. Empty = root.
using VertexPath = std::vector<std::size_t>;

/// Rooted ordered tree whose vertices carry a label and an optional lock mark.
///
/// Children are kept in left-to-right order. A lock mark fixes that order for
/// the lock-aware semimetric; everything else ignores it. Locks on leaves are
/// rejected because a leaf has no child order to fix.
class LabeledTree {
 public:
  explicit LabeledTree(std::string label, bool locked = false, std::vector<LabeledTree> children = {})
      : label_(std::move(label)), locked_(locked), children_(std::move(children)) {
    if (!is_valid_label(label_)) throw ValidationError("invalid label '" + label_ + "'");
    if (locked_ && children_.empty()) throw ValidationError("lock mark on leaf '" + label_ + "'");
  }

  const std::string& label() const noexcept { return label_; }
  bool locked() const noexcept { return locked_; }
  const std::vector<LabeledTree>& children() const noexcept { return children_; }
  const LabeledTree& child(std::size_t i) const { return children_.at(i); }
  bool is_leaf() const noexcept { return children_.empty(); }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children_) n += c.size();
    return n;
  }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& c : children_) d = std::max(d, c.depth() + 1);
    return d;
  }

  /// Largest number of children at any vertex.
  std::size_t max_branching() const {
    std::size_t b = children_.size();
    for (const auto& c : children_) b = std::max(b, c.max_branching());
    return b;
  }

  bool has_locks() const {
    return locked_ || std::any_of(children_.begin(), children_.end(), [](const auto& c) { return c.has_locks(); });
  }

  template <class F>
  void for_each_label(F&& f) const {
    f(label_);
    for (const auto& c : children_) c.for_each_label(f);
  }

  const LabeledTree& at(std::span<const std::size_t> path) const {
    const LabeledTree* v = this;
    for (std::size_t i : path) {
      if (i >= v->children_.size()) throw ValidationError("vertex path out of range");
      v = &v->children_[i];
    }
    return *v;
  }

  /// Copy with every lock mark removed.
  LabeledTree unlocked() const {
    std::vector<LabeledTree> kids;
    kids.reserve(children_.size());
    for (const auto& c : children_) kids.push_back(c.unlocked());
    return LabeledTree(label_, false, std::move(kids));
  }

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;

 private:
  friend LabeledTree swap_children(const LabeledTree&, std::span<const std::size_t>, std::size_t, std::size_t);

  std::string label_;
  bool locked_ = false;
  std::vector<LabeledTree> children_;
};

struct ParseOptions {
  std::size_t max_arity = 8;
  /// Completed trees are printed with explicit "N" vertices; reading them back needs this.
  bool allow_null_label = false;
};

namespace detail {

class TreeParser {
 public:
  TreeParser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  LabeledTree parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty input", pos_);
    LabeledTree t = parse_tree();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LabeledTree parse_tree() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
    if (pos_ == start) {
      if (pos_ >= text_.size()) throw ParseError("expected label, found end of input", pos_);
      throw ParseError("expected label, found '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    std::string label(text_.substr(start, pos_ - start));
    if (label == kNullLabel && !options_.allow_null_label) {
      throw ParseError("reserved null label 'N' may not appear in input trees", start);
    }

    const bool locked = consume('*');
    const std::size_t lock_pos = pos_;

    std::vector<LabeledTree> children;
    if (consume('(')) {
      children.push_back(parse_tree());
      while (consume(',')) children.push_back(parse_tree());
      if (!consume(')')) {
        skip_ws();
        throw ParseError("expected ',' or ')'", pos_);
      }
      if (children.size() > options_.max_arity) {
        throw ParseError("vertex '" + label + "' has " + std::to_string(children.size()) +
                             " children, above the maximum arity " + std::to_string(options_.max_arity),
                         start);
      }
    }
    if (locked && children.empty()) throw ParseError("lock mark on leaf '" + label + "'", lock_pos - 1);
    return LabeledTree(std::move(label), locked, std::move(children));
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

inline void serialize_into(const LabeledTree& t, std::string& out) {
  out += t.label();
  if (t.locked()) out += '*';
  if (!t.is_leaf()) {
    out += '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i) out += ',';
      serialize_into(t.children()[i], out);
    }
    out += ')';
  }
}

}  // namespace detail

/// Reads `label lock? children?`; whitespace between tokens is ignored.
inline LabeledTree parse_tree(std::string_view text, const ParseOptions& options = {}) {
  return detail::TreeParser(text, options).parse();
}

/// Canonical text form with no whitespace; `parse_tree(to_string(t)) == t`.
inline std::string to_string(const LabeledTree& t) {
  std::string out;
  detail::serialize_into(t, out);
  return out;
}

/// Exchanges the i-th and j-th subtrees (labels and locks travel with them) of the vertex at `path`.
inline LabeledTree swap_children(const LabeledTree& tree, std::span<const std::size_t> path, std::size_t i,
                                 std::size_t j) {
  LabeledTree copy = tree;
  LabeledTree* v = &copy;
  for (std::size_t step : path) {
    if (step >= v->children_.size()) throw ValidationError("vertex path out of range");
    v = &v->children_[step];
  }
  if (i >= v->children_.size() || j >= v->children_.size()) {
    throw ValidationError("child index out of range: vertex has " + std::to_string(v->children_.size()) +
                          " children");
  }
  std::swap(v->children_[i], v->children_[j]);
  return copy;
}

/// Paths of every vertex in preorder.
inline std::vector<VertexPath> vertex_paths(const LabeledTree& tree) {
  std::vector<VertexPath> out;
  VertexPath cur;
  auto walk = [&](auto&& self, const LabeledTree& v) -> void {
    out.push_back(cur);
    for (std::size_t i = 0; i < v.children().size(); ++i) {
      cur.push_back(i);
      self(self, v.children()[i]);
      cur.pop_back();
    }
  };
  walk(walk, tree);
  return out;
}

inline std::string to_string(const VertexPath& path) {
  std::string out = "/";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '/';
    out += std::to_string(path[i]);
  }
  return out;
}

}  // namespace treemetric
