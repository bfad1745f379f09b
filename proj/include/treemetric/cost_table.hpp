#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "treemetric/alphabet.hpp"
#include "treemetric/rational.hpp"
#include "treemetric/weights.hpp"

namespace treemetric {

/// Precomputed c(depth) * d(a, b) for every depth and label pair.
template <class Scalar>
class CostTable {
 public:
  CostTable(std::size_t levels, std::size_t labels, std::vector<Scalar> entries)
      : levels_(levels), labels_(labels), entries_(std::move(entries)) {}

  const Scalar& operator()(std::size_t depth, LabelId a, LabelId b) const {
    return entries_[(depth * labels_ + a) * labels_ + b];
  }

  std::size_t levels() const noexcept { return levels_; }

 private:
  std::size_t levels_;
  std::size_t labels_;
  std::vector<Scalar> entries_;
};

namespace detail {

inline BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace detail

/// Runs `kernel(table)` over an exact cost table for trees of the given depth.
///
/// Every distance the library computes is a sum of at most `vertices` table
/// entries. When the entries scaled to a common denominator keep that sum
/// inside int64 the kernel runs on integers; otherwise it runs on Rational.
/// Either way the returned value is exact.
template <class Kernel>
Rational evaluate_exact(const LabelAlphabet& alphabet, const WeightScheme& weights, std::size_t depth,
                        std::size_t vertices, Kernel&& kernel) {
  const std::size_t levels = depth + 1;
  const std::size_t labels = alphabet.size();

  if (alphabet.trivial_metric() && weights.kind() == WeightScheme::Kind::constant) {
    std::vector<std::int64_t> entries(levels * labels * labels, 1);
    for (std::size_t l = 0; l < levels; ++l)
      for (std::size_t a = 0; a < labels; ++a) entries[(l * labels + a) * labels + a] = 0;
    return Rational(kernel(CostTable<std::int64_t>(levels, labels, std::move(entries))));
  }

  std::vector<Rational> exact(levels * labels * labels);
  BigInt common = 1;
  for (std::size_t l = 0; l < levels; ++l) {
    const Rational c = weights.at(l);
    for (std::size_t a = 0; a < labels; ++a) {
      for (std::size_t b = 0; b < labels; ++b) {
        Rational v = c * alphabet.distance(static_cast<LabelId>(a), static_cast<LabelId>(b));
        common = detail::lcm(common, boost::multiprecision::denominator(v));
        exact[(l * labels + a) * labels + b] = std::move(v);
      }
    }
  }

  const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4) / BigInt(vertices + 1);
  std::vector<std::int64_t> scaled;
  scaled.reserve(exact.size());
  bool fits = true;
  for (const auto& v : exact) {
    BigInt s = boost::multiprecision::numerator(v) * (common / boost::multiprecision::denominator(v));
    if (s > limit) {
      fits = false;
      break;
    }
    scaled.push_back(s.convert_to<std::int64_t>());
  }
  if (fits) {
    std::int64_t total = kernel(CostTable<std::int64_t>(levels, labels, std::move(scaled)));
    return Rational(BigInt(total), common);
  }
  return kernel(CostTable<Rational>(levels, labels, std::move(exact)));
}

}  // namespace treemetric
