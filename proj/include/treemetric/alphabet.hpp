#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "treemetric/error.hpp"
#include "treemetric/rational.hpp"
#include "treemetric/tree.hpp"

namespace treemetric {

/// Index of a label inside a LabelAlphabet. Ids ascend with the alphabet's total order.
using LabelId = std::uint16_t;

/// The label universe including the null label, with a metric and a strict total order.
///
/// Members are stored in ascending order, so comparing two ids compares the labels.
/// The metric is checked for the metric axioms whenever it is replaced.
class LabelAlphabet {
 public:
  /// `ascending` lists labels from smallest to greatest. "N" may appear anywhere;
  /// when absent it is appended as the greatest element. Metric defaults to trivial.
  static LabelAlphabet from_order(const std::vector<std::string>& ascending) {
    LabelAlphabet a;
    for (const auto& name : ascending) {
      if (!is_valid_label(name)) throw ValidationError("invalid label '" + name + "' in alphabet");
      if (a.index_.count(name)) throw ValidationError("duplicate label '" + name + "' in alphabet");
      a.index_.emplace(name, static_cast<LabelId>(a.names_.size()));
      a.names_.push_back(name);
    }
    if (!a.index_.count(std::string(kNullLabel))) {
      a.index_.emplace(std::string(kNullLabel), static_cast<LabelId>(a.names_.size()));
      a.names_.emplace_back(kNullLabel);
    }
    if (a.names_.size() > 0xFFFF) throw ValidationError("alphabet too large");
    a.null_ = a.index_.at(std::string(kNullLabel));
    a.reset_trivial_metric();
    return a;
  }

  /// Default alphabet: labels ascending by token, N greatest.
  static LabelAlphabet from_labels(const std::vector<std::string>& labels) {
    std::set<std::string> uniq(labels.begin(), labels.end());
    uniq.erase(std::string(kNullLabel));
    return from_order(std::vector<std::string>(uniq.begin(), uniq.end()));
  }

  static LabelAlphabet default_for(std::span<const LabeledTree> trees) {
    std::vector<std::string> labels;
    for (const auto& t : trees) t.for_each_label([&](const std::string& l) { labels.push_back(l); });
    return from_labels(labels);
  }

  std::size_t size() const noexcept { return names_.size(); }
  LabelId null_id() const noexcept { return null_; }
  const std::string& name(LabelId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  LabelId id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("label '" + name + "' is not in the alphabet");
    return it->second;
  }

  const Rational& distance(LabelId a, LabelId b) const { return metric_[a * names_.size() + b]; }

  Rational diameter() const {
    Rational best = 0;
    for (const auto& v : metric_) best = std::max(best, v);
    return best;
  }

  bool trivial_metric() const noexcept { return metric_name_ == "trivial"; }
  const std::string& metric_name() const noexcept { return metric_name_; }

  /// "Z<X<W<S<N"
  std::string order_description() const {
    std::string out;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (i) out += '<';
      out += names_[i];
    }
    return out;
  }

  /// Replaces the metric. `d` is indexed by this alphabet's ids, row-major.
  void set_metric(std::vector<Rational> d, std::string name) {
    const std::size_t n = names_.size();
    if (d.size() != n * n) throw ValidationError("label metric has wrong dimensions");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Rational& v = d[a * n + b];
        if (a == b && v != 0) throw ValidationError("label metric: d(" + names_[a] + "," + names_[a] + ") must be 0");
        if (a != b && v <= 0) {
          throw ValidationError("label metric: d(" + names_[a] + "," + names_[b] + ") must be positive");
        }
        if (v != d[b * n + a]) {
          throw ValidationError("label metric is not symmetric at (" + names_[a] + "," + names_[b] + ")");
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (d[a * n + c] > d[a * n + b] + d[b * n + c]) {
            throw ValidationError("label metric violates the triangle inequality: d(" + names_[a] + "," +
                                  names_[c] + ") > d(" + names_[a] + "," + names_[b] + ") + d(" + names_[b] +
                                  "," + names_[c] + ")");
          }
    metric_ = std::move(d);
    metric_name_ = std::move(name);
  }

  void reset_trivial_metric() {
    const std::size_t n = names_.size();
    metric_.assign(n * n, Rational(1));
    for (std::size_t a = 0; a < n; ++a) metric_[a * n + a] = 0;
    metric_name_ = "trivial";
  }

  /// Every label occurring in `tree` must be a member; throws otherwise.
  void require_labels(const LabeledTree& tree) const {
    tree.for_each_label([&](const std::string& l) { (void)id(l); });
  }

 private:
  LabelAlphabet() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> index_;
  LabelId null_ = 0;
  std::vector<Rational> metric_;
  std::string metric_name_ = "trivial";
};

/// One label per line, ascending. Blank lines and lines starting with '#' are skipped.
inline std::vector<std::string> read_order(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string token;
    std::istringstream ls(line);
    ls >> token;
    if (token.empty() || token.front() == '#') continue;
    std::string extra;
    if (ls >> extra) throw ValidationError("order file: expected one label per line, got '" + line + "'");
    out.push_back(token);
  }
  if (out.empty()) throw ValidationError("order file is empty");
  return out;
}

/// Square CSV whose first row and first column are labels.
struct LabelMetricTable {
  std::vector<std::string> labels;
  std::map<std::pair<std::string, std::string>, Rational> entries;
};

inline LabelMetricTable read_metric_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      auto b = cell.find_first_not_of(" \t\r");
      auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };

  LabelMetricTable table;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      if (header.size() < 2) throw ValidationError("label metric CSV: header needs at least one label");
      for (std::size_t i = 1; i < header.size(); ++i) {
        if (!is_valid_label(header[i])) throw ValidationError("label metric CSV: invalid label '" + header[i] + "'");
      }
      table.labels.assign(header.begin() + 1, header.end());
      continue;
    }
    if (cells.size() != header.size()) {
      throw ValidationError("label metric CSV: row '" + cells.front() + "' has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(header.size()));
    }
    for (std::size_t i = 1; i < cells.size(); ++i) {
      table.entries[{cells.front(), header[i]}] = parse_rational(cells[i]);
    }
  }
  if (header.empty()) throw ValidationError("label metric CSV is empty");
  return table;
}

/// Installs `table` into `alphabet`. Missing entries involving N default to 1; any other gap is an error.
inline void apply_metric(LabelAlphabet& alphabet, const LabelMetricTable& table, const std::string& name) {
  for (const auto& l : table.labels) {
    if (!alphabet.contains(l)) throw ValidationError("label metric CSV: label '" + l + "' is not in the alphabet");
  }
  const std::size_t n = alphabet.size();
  std::vector<Rational> d(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& la = alphabet.name(static_cast<LabelId>(a));
      const auto& lb = alphabet.name(static_cast<LabelId>(b));
      if (auto it = table.entries.find({la, lb}); it != table.entries.end()) {
        d[a * n + b] = it->second;
      } else if (a == b) {
        d[a * n + b] = 0;
      } else if (la == kNullLabel || lb == kNullLabel) {
        d[a * n + b] = 1;
      } else {
        throw ValidationError("label metric CSV: no entry for (" + la + "," + lb + ")");
      }
    }
  }
  alphabet.set_metric(std::move(d), name);
}

}  // namespace treemetric
