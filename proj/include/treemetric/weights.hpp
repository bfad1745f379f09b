#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "treemetric/error.hpp"
#include "treemetric/rational.hpp"

namespace treemetric {

/// Depth-dependent coefficient c(depth) multiplying each vertex's label distance.
class WeightScheme {
 public:
  enum class Kind { constant, exponential };

  static WeightScheme constant() { return WeightScheme(Kind::constant, Rational(1)); }

  /// c(depth) = base^depth. A base below 1 emphasizes differences near the root.
  static WeightScheme exponential(Rational base) {
    if (base <= 0) throw ValidationError("exponential weight base must be positive");
    return WeightScheme(Kind::exponential, std::move(base));
  }

  /// "const" | "constant" | "exp:<base>" with base such as 0.5 or 1/2.
  static WeightScheme parse(std::string_view spec) {
    if (spec == "const" || spec == "constant") return constant();
    if (spec.starts_with("exp:")) return exponential(parse_rational(spec.substr(4)));
    throw ValidationError("unknown weight scheme '" + std::string(spec) + "' (expected const or exp:<base>)");
  }

  Kind kind() const noexcept { return kind_; }
  const Rational& base() const noexcept { return base_; }

  Rational at(std::size_t depth) const {
    if (kind_ == Kind::constant) return Rational(1);
    Rational w = 1;
    for (std::size_t i = 0; i < depth; ++i) w *= base_;
    return w;
  }

  std::string describe() const {
    return kind_ == Kind::constant ? std::string("constant") : "exponential(" + format_exact(base_) + ")";
  }

  friend bool operator==(const WeightScheme&, const WeightScheme&) = default;

 private:
  WeightScheme(Kind kind, Rational base) : kind_(kind), base_(std::move(base)) {}

  Kind kind_;
  Rational base_;
};

}  // namespace treemetric
