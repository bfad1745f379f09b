#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "test_support.hpp"

using namespace treemetric;
using namespace treemetric::testing;

namespace {

using Levels = std::vector<std::vector<LabelId>>;

std::vector<LabelId> flatten(const Levels& levels) {
  std::vector<LabelId> out;
  for (const auto& l : levels) out.insert(out.end(), l.begin(), l.end());
  return out;
}

// Reference canonical form: regularize every child, build each child's full
// label string, stable-sort the children by it, then interleave level by level.
Levels reference_form(const CompletedTree& t, std::size_t pos = 0) {
  if (t.level_of(pos) == t.depth()) return {{t.label(pos)}};
  std::vector<Levels> kids;
  for (std::size_t j = 0; j < t.arity(); ++j) kids.push_back(reference_form(t, t.child(pos, j)));
  std::stable_sort(kids.begin(), kids.end(), [](const Levels& a, const Levels& b) { return flatten(a) < flatten(b); });
  Levels out{{t.label(pos)}};
  for (std::size_t l = 0; l < kids.front().size(); ++l) {
    out.emplace_back();
    for (const auto& k : kids) out.back().insert(out.back().end(), k[l].begin(), k[l].end());
  }
  return out;
}

std::string lr_string(const LabeledTree& t, const LabelAlphabet& alphabet, std::size_t level, std::size_t arity = 2) {
  return label_string_text(left_regularize(t, alphabet, level, arity), alphabet);
}

}  // namespace

TEST(LexCompare, Examples) {
  const auto alphabet = xyz_alphabet();
  EXPECT_EQ(lex_compare({"X", "Z", "N"}, {"X", "N", "Y"}, alphabet), std::strong_ordering::less);
  EXPECT_EQ(lex_compare({"Y", "N", "N"}, {"N", "N", "N"}, alphabet), std::strong_ordering::less);
  EXPECT_EQ(lex_compare({"X", "Y"}, {"X", "Y"}, alphabet), std::strong_ordering::equal);
  EXPECT_EQ(lex_compare({"X", "Y"}, {"X", "Z"}, alphabet), std::strong_ordering::greater);
  EXPECT_THROW(lex_compare({"X"}, {"X", "Y"}, alphabet), ValidationError);
}

TEST(LeftRegularize, SortsSubtreesOfSmallTree) {
  const auto alphabet = xyz_alphabet();
  const auto t = left_regularize(fixture("T_12"), alphabet, 2, 2);
  EXPECT_EQ(label_string_text(t, alphabet), "XZYZYNN");
  EXPECT_EQ(to_string(t, alphabet), "X(Z(Z,Y),Y(N,N))");
}

TEST(LeftRegularize, AlreadyRegularTreeIsUnchanged) {
  const auto alphabet = xyz_alphabet();
  EXPECT_EQ(lr_string(fixture("T_13"), alphabet, 2), "YYNNNNN");
}

TEST(LeftRegularize, DevelopmentalTreeLevelByLevel) {
  const auto alphabet = zxws_alphabet();
  std::map<std::size_t, std::string> snapshots;
  const auto t = left_regularize(fixture("T_A"), alphabet, 3, 2, [&](std::size_t level, const CompletedTree& s) {
    snapshots[level] = label_string_text(s, alphabet);
  });
  EXPECT_EQ(snapshots.size(), 3u);
  EXPECT_EQ(snapshots[2], "WXZWWZZWWWWSSZZ");
  EXPECT_EQ(snapshots[1], "WXZWWZZWWWWZZSS");
  EXPECT_EQ(snapshots[0], "WZXZZWWZZSSWWWW");
  EXPECT_EQ(label_string_text(t, alphabet), "WZXZZWWZZSSWWWW");
}

TEST(LeftRegularize, LocksTravelWithTheirVertices) {
  const auto alphabet = xyz_alphabet();
  // Z*(..) sorts before Y under Z<Y<X<N, carrying its lock along.
  const auto t = left_regularize(parse_tree("X(Y,Z*(X,Y))"), alphabet, 2, 2);
  EXPECT_EQ(to_string(t, alphabet), "X(Z*(Y,X),Y(N,N))");
}

TEST(LeftRegularize, MatchesReferenceForm) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t k = 2 + seed % 3;
    const std::size_t m = k == 2 ? 5 : 3;
    const auto c = complete(random_xyz(seed, m, k), alphabet, m, k);
    EXPECT_EQ(label_string(left_regularize(c)), flatten(reference_form(c))) << seed;
  }
}

TEST(LeftRegularize, LowEntropyLabelsMatchReferenceForm) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y"});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_perfect_tree(seed, 5, 2, alphabet);
    EXPECT_EQ(label_string(left_regularize(c)), flatten(reference_form(c))) << seed;
  }
}

TEST(LeftRegularize, ChildrenAreSortedAndResultIsIdempotent) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t k = 2 + seed % 2;
    const auto t = left_regularize(random_xyz(seed, 4, k), alphabet, 4, k);
    for (std::size_t p = 0; p < t.level_begin(t.depth()); ++p)
      for (std::size_t j = 1; j < k; ++j)
        EXPECT_NE(lex_compare(t.subtree_labels(t.child(p, j - 1)), t.subtree_labels(t.child(p, j))),
                  std::strong_ordering::greater);
    EXPECT_EQ(left_regularize(t), t);
  }
}

TEST(LeftRegularize, CanonicalUnderSwaps) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t k = 2 + seed % 2;
    const auto t = random_xyz(seed, 4, k);
    const auto s = random_swaps(t, rng, 8);
    EXPECT_EQ(left_regularize(s, alphabet, 4, k), left_regularize(t, alphabet, 4, k));
  }
}

TEST(LeftRegularize, CanonicalEqualityIffDistanceZero) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  std::size_t equal_pairs = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto a = random_xyz(seed, 2);
    const auto b = random_xyz(seed + 1, 2);
    const bool same = left_regularize(a, alphabet, 2, 2) == left_regularize(b, alphabet, 2, 2);
    equal_pairs += same;
    EXPECT_EQ(same, d_bm(a, b, alphabet).value == 0);
  }
  EXPECT_GT(equal_pairs, 0u);
}

TEST(LeftRegularMetric, WorkedExamples) {
  EXPECT_EQ(d_lr(fixture("T_12"), fixture("T_13"), xyz_alphabet()).value, 5);
  EXPECT_EQ(d_lr(fixture("T_A"), fixture("T_S"), zxws_alphabet()).value, 8);
  EXPECT_EQ(d_lr(fixture("T_7"), fixture("T_10"), xyz_alphabet()).value, 8);
  const auto r = d_lr(fixture("T_12"), fixture("T_13"), xyz_alphabet());
  EXPECT_EQ(r.metric, "lr");
  EXPECT_EQ(*r.order, "Z<Y<X<N");
}

TEST(LeftRegularMetric, UpperBoundsBestMatch) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  const auto reversed = LabelAlphabet::from_order({"Z", "Y", "X"});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto a = random_xyz(seed, 4);
    const auto b = random_xyz(seed + 3000, 4);
    const auto bm = d_bm(a, b, alphabet).value;
    EXPECT_GE(d_lr(a, b, alphabet).value, bm);
    EXPECT_GE(d_lr(a, b, reversed).value, bm);
  }
}

TEST(LeftRegularMetric, ValueDependsOnTheOrder) {
  const auto forward = LabelAlphabet::from_labels({"X", "Y", "Z"});
  const auto backward = LabelAlphabet::from_order({"Z", "Y", "X"});
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 200 && !differs; ++seed) {
    const auto a = random_xyz(seed, 3);
    const auto b = random_xyz(seed + 17, 3);
    differs = d_lr(a, b, forward).value != d_lr(a, b, backward).value;
  }
  EXPECT_TRUE(differs);
}

TEST(LeftRegularMetric, EquivalentTreesAreAtZero) {
  const auto alphabet = LabelAlphabet::from_labels({"X", "Y", "Z"});
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = random_xyz(seed, 4, 3);
    EXPECT_EQ(d_lr(t, random_swaps(t, rng, 5), alphabet).value, 0);
  }
}
