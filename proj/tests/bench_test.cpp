#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace treemetric;

namespace {

ScalingOptions small(BenchMetric metric) {
  ScalingOptions o;
  o.metric = metric;
  o.first_depth = 2;
  o.last_depth = 5;
  o.min_sample_ns = 1e4;
  return o;
}

}  // namespace

TEST(Bench, InputsAreDeterministic) {
  const auto alphabet = bench_alphabet(4);
  const auto o = small(BenchMetric::bm);
  const auto [a1, b1] = bench_inputs(o, 6, alphabet);
  const auto [a2, b2] = bench_inputs(o, 6, alphabet);
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(b1, b2);
  EXPECT_FALSE(a1 == b1);
  EXPECT_FALSE(a1.has_locks());
  EXPECT_TRUE(bench_inputs(small(BenchMetric::bmstar), 6, alphabet).first.has_locks());
}

TEST(Bench, RowsCarryLibraryValues) {
  const auto alphabet = bench_alphabet(4);
  for (auto metric : {BenchMetric::bm, BenchMetric::lr, BenchMetric::bmstar}) {
    const auto o = small(metric);
    const auto rows = run_scaling(o);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
      const auto [a, b] = bench_inputs(o, r.depth, alphabet);
      EXPECT_EQ(r.n, (std::size_t{1} << (r.depth + 1)) - 1);
      EXPECT_EQ(r.trials, 5u);
      EXPECT_GT(r.median_ns, 0);
      const Rational expected = metric == BenchMetric::bm   ? d_bm(a, b, alphabet).value
                                : metric == BenchMetric::lr ? d_lr(a, b, alphabet).value
                                                            : d_bm_star(a, b, alphabet).value;
      EXPECT_EQ(r.value, expected);
    }
    EXPECT_FALSE(rows.front().ratio.has_value());
    EXPECT_TRUE(rows.back().ratio.has_value());
    const auto again = run_scaling(o);
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(again[i].value, rows[i].value);
  }
}

TEST(Bench, TernaryVertexCounts) {
  auto o = small(BenchMetric::lr);
  o.arity = 3;
  o.last_depth = 3;
  const auto rows = run_scaling(o);
  EXPECT_EQ(rows.back().n, 40u);
}

TEST(Bench, CsvFormat) {
  auto o = small(BenchMetric::lr);
  o.labels = LabelMode::constant;
  o.last_depth = 3;
  const auto csv = to_csv(run_scaling(o));
  std::istringstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(header, "metric,depth,n,arity,trials,median_ns,ratio");
  EXPECT_EQ(first.rfind("lr_adversarial,2,7,2,5,", 0), 0u) << first;
  EXPECT_EQ(first.back(), ',');
  EXPECT_EQ(second.rfind("lr_adversarial,3,15,2,5,", 0), 0u) << second;
  EXPECT_NE(second.back(), ',');
}

TEST(Bench, Errors) {
  auto o = small(BenchMetric::bm);
  o.trials = 4;
  EXPECT_THROW(run_scaling(o), ValidationError);
  o = small(BenchMetric::bm);
  o.first_depth = 6;
  o.last_depth = 5;
  EXPECT_THROW(run_scaling(o), ValidationError);
  o = small(BenchMetric::bm);
  o.arity = 9;
  EXPECT_THROW(run_scaling(o), ValidationError);
  EXPECT_THROW(parse_bench_metric("ot"), ValidationError);
  EXPECT_THROW(bench_alphabet(0), ValidationError);
}
