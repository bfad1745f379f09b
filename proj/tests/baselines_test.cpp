#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_support.hpp"

using namespace treemetric;
using namespace treemetric::testing;

namespace {

// Reference for the largest common forest on tiny trees: try every pair of
// antichains (sets of mutually non-nested vertices) and keep the largest pair
// whose subtree code multisets coincide.
std::size_t brute_force_forest(const LabeledTree& a, const LabeledTree& b) {
  struct Vertex {
    VertexPath path;
    std::string code;
    std::size_t size;
  };
  auto vertices = [](const LabeledTree& t) {
    std::vector<Vertex> out;
    for (const auto& p : vertex_paths(t)) out.push_back({p, canonical_code(t.at(p)), t.at(p).size()});
    return out;
  };
  auto nested = [](const VertexPath& x, const VertexPath& y) {
    const auto n = std::min(x.size(), y.size());
    return std::equal(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n), y.begin());
  };
  auto antichains = [&](const std::vector<Vertex>& vs) {
    std::map<std::multiset<std::string>, std::size_t> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << vs.size()); ++mask) {
      std::multiset<std::string> codes;
      std::size_t total = 0;
      bool ok = true;
      for (std::size_t i = 0; i < vs.size() && ok; ++i) {
        if (!(mask >> i & 1)) continue;
        for (std::size_t j = 0; j < i && ok; ++j)
          if ((mask >> j & 1) && nested(vs[i].path, vs[j].path)) ok = false;
        codes.insert(vs[i].code);
        total += vs[i].size;
      }
      if (ok) out[codes] = total;
    }
    return out;
  };
  const auto ca = antichains(vertices(a));
  const auto cb = antichains(vertices(b));
  std::size_t best = 0;
  for (const auto& [codes, size] : ca)
    if (cb.count(codes)) best = std::max(best, size);
  return best;
}

}  // namespace

TEST(CanonicalCode, UnorderedIsomorphism) {
  EXPECT_EQ(canonical_code(parse_tree("X(Y,Z)")), canonical_code(parse_tree("X(Z,Y)")));
  EXPECT_NE(canonical_code(parse_tree("X(Y,Z)")), canonical_code(parse_tree("X(Y,Y)")));
  EXPECT_EQ(canonical_code(parse_tree("X*(Y,Z)")), canonical_code(parse_tree("X(Y,Z)")));
  EXPECT_EQ(canonical_code(fixture("T_7")), canonical_code(fixture("T_11").child(0)));
  EXPECT_NE(canonical_code(parse_tree("X(Y(Z))")), canonical_code(parse_tree("X(Y,Z)")));
}

TEST(CommonForest, Examples) {
  EXPECT_EQ(largest_common_forest(fixture("T_1"), fixture("T_2")).f, 4u);
  EXPECT_EQ(largest_common_forest(fixture("T_7"), fixture("T_11")).f, 6u);
  EXPECT_EQ(largest_common_forest(fixture("T_A"), fixture("T_A")).f, fixture("T_A").size());
  EXPECT_EQ(largest_common_forest(fixture("T_4"), fixture("T_6")).f, 0u);
}

TEST(CommonSubtree, Examples) {
  EXPECT_EQ(largest_common_subtree(fixture("T_7"), fixture("T_10")).f, 4u);
  EXPECT_EQ(largest_common_subtree(fixture("T_4"), fixture("T_5")).f, 0u);
  EXPECT_TRUE(largest_common_subtree(fixture("T_4"), fixture("T_5")).matched_pairs.empty());
  EXPECT_EQ(largest_common_subtree(fixture("T_9"), fixture("T_9")).f, fixture("T_9").size());
}

TEST(Baselines, DistanceValues) {
  EXPECT_EQ(d_bu(fixture("T_1"), fixture("T_2")).value, Rational(3, 7));
  EXPECT_EQ(d_st(fixture("T_1"), fixture("T_2")).value, Rational(6, 7));
  EXPECT_EQ(d_bu(fixture("T_7"), fixture("T_11")).value, Rational(1, 7));
  EXPECT_EQ(d_st(fixture("T_8"), fixture("T_11")).value, Rational(6, 7));
  EXPECT_EQ(d_bu(fixture("T_5"), fixture("T_5")).value, 0);
  EXPECT_EQ(d_st(fixture("T_5"), fixture("T_5")).value, 0);
  const auto r = d_bu(fixture("T_7"), fixture("T_11"));
  EXPECT_EQ(r.metric, "bu");
  EXPECT_EQ(*r.common_size, 6u);
  EXPECT_EQ(*r.n1, 6u);
  EXPECT_EQ(*r.n2, 7u);
  EXPECT_FALSE(r.level.has_value());
}

TEST(Baselines, MatchedPairsAreDisjointAndIsomorphic) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto a = random_xyz(seed, 3);
    const auto b = random_xyz(seed + 40, 3);
    const auto r = largest_common_forest(a, b);
    std::size_t total = 0;
    std::vector<VertexPath> left, right;
    for (const auto& [pa, pb] : r.matched_pairs) {
      EXPECT_EQ(canonical_code(a.at(pa)), canonical_code(b.at(pb)));
      total += a.at(pa).size();
      left.push_back(pa);
      right.push_back(pb);
    }
    EXPECT_EQ(total, r.f);
    for (const auto* side : {&left, &right})
      for (std::size_t i = 0; i < side->size(); ++i)
        for (std::size_t j = 0; j < side->size(); ++j) {
          if (i == j) continue;
          const auto& x = (*side)[i];
          const auto& y = (*side)[j];
          EXPECT_FALSE(x.size() <= y.size() && std::equal(x.begin(), x.end(), y.begin()));
        }
  }
}

TEST(Baselines, ForestMatchesAntichainReference) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto a = random_xyz(seed, 2 + seed % 2);
    const auto b = random_xyz(seed + 60, 2 + seed % 2);
    if (a.size() > 10 || b.size() > 10) continue;
    EXPECT_EQ(largest_common_forest(a, b).f, brute_force_forest(a, b)) << to_string(a) << " " << to_string(b);
  }
}

TEST(Baselines, BoundsOrderAndSwapInvariance) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto a = random_xyz(seed, 3, 3);
    const auto b = random_xyz(seed + 90, 3, 3);
    const auto bu = d_bu(a, b).value;
    const auto st = d_st(a, b).value;
    EXPECT_GE(bu, 0);
    EXPECT_LE(st, 1);
    EXPECT_LE(bu, st);
    EXPECT_EQ(d_bu(random_swaps(a, rng, 4), random_swaps(b, rng, 4)).value, bu);
    EXPECT_EQ(d_st(random_swaps(a, rng, 4), b).value, st);
  }
}
