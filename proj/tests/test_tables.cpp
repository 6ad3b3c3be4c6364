#include <gtest/gtest.h>

#include "cranklab/tables.hpp"
#include "oracles.hpp"

using namespace cranklab;

namespace {
std::map<std::int64_t, CountValue> as_map(const std::map<int, std::uint64_t>& h) {
  std::map<std::int64_t, CountValue> out;
  for (const auto& [m, c] : h) out[m] = c;
  return out;
}
}  // namespace

TEST(StatTable, RankRowsFromEnumeration) {
  const auto t = build_stat_table(Statistic::rank, 30);
  EXPECT_EQ(t.method(), TableMethod::enumeration);
  EXPECT_EQ(t.row_map(4), (std::map<std::int64_t, CountValue>{{-3, 1}, {-1, 1}, {0, 1}, {1, 1}, {3, 1}}));
  for (int n = 1; n <= 30; ++n) ASSERT_EQ(t.row_map(n), as_map(oracle::rank_histogram(n))) << "n=" << n;
}

TEST(StatTable, CrankMethodsAgreeFromTwoOn) {
  const auto series = build_stat_table(Statistic::crank, 40, TableMethod::series);
  const auto enumerated = build_stat_table(Statistic::crank, 40, TableMethod::enumeration);
  for (std::size_t n = 2; n <= 40; ++n) ASSERT_EQ(series.row_map(n), enumerated.row_map(n)) << "n=" << n;
  // row 1 is where the two differ
  EXPECT_EQ(series.row_map(1), (std::map<std::int64_t, CountValue>{{-1, 1}, {0, -1}, {1, 1}}));
  EXPECT_EQ(enumerated.row_map(1), (std::map<std::int64_t, CountValue>{{-1, 1}}));
  EXPECT_TRUE(series.row_map(0).empty());
}

TEST(StatTable, RowSumsAreP) {
  const auto t = build_stat_table(Statistic::crank, 200);
  for (std::size_t n = 2; n <= 200; ++n) EXPECT_EQ(t.row_sum(n), partition_count(n));
}

TEST(StatTable, Rejections) {
  EXPECT_THROW(build_stat_table(Statistic::rank, 10, TableMethod::series), std::invalid_argument);
  EXPECT_THROW(build_stat_table(Statistic::rank, kEnumerationLimit + 1), std::invalid_argument);
  EXPECT_EQ(parse_statistic("crank"), Statistic::crank);
  EXPECT_THROW(parse_statistic("rnak"), std::invalid_argument);
  EXPECT_THROW(parse_method("fft"), std::invalid_argument);
}

TEST(StatTable, PrefixKeepsLeadingRows) {
  const auto t = build_stat_table(Statistic::crank, 60);
  const auto p = t.prefix(25);
  EXPECT_EQ(p.max_n(), 25u);
  EXPECT_EQ(p, build_stat_table(Statistic::crank, 25));
  EXPECT_THROW(t.prefix(61), std::out_of_range);
}

TEST(ClassCounts, SixSpreadsEvenlyModEleven) {
  const auto t = build_stat_table(Statistic::crank, 6);
  const auto cv = class_counts(t, 6, 11);
  EXPECT_EQ(cv.counts, std::vector<CountValue>(11, CountValue(1)));
  EXPECT_TRUE(cv.all_equal());
  EXPECT_EQ(cv.total(), 11);
}

TEST(ClassCounts, NegativeStatisticsUseFloorResidues) {
  const auto t = build_stat_table(Statistic::rank, 4);
  // ranks of 4 are -3, -1, 0, 1, 3
  EXPECT_EQ(class_counts(t, 4, 5).counts, (std::vector<CountValue>{1, 1, 1, 1, 1}));
  EXPECT_EQ(class_counts(t, 4, 3).counts, (std::vector<CountValue>{3, 1, 1}));
  EXPECT_EQ(class_counts(t, 4, 1).counts, (std::vector<CountValue>{5}));
  EXPECT_THROW(class_counts(t, 4, 0), std::invalid_argument);
  EXPECT_THROW(class_counts(t, 5, 5), std::out_of_range);
}

TEST(ClassCounts, AgreeWithDirectResidueTally) {
  const auto t = build_stat_table(Statistic::rank, 25);
  for (std::uint64_t q : {2u, 5u, 7u, 13u}) {
    for (int n = 1; n <= 25; ++n) {
      std::vector<CountValue> expected(q, 0);
      oracle::each_partition(n, [&](const std::vector<int>& p) {
        const std::int64_t r = oracle::rank(p), m = static_cast<std::int64_t>(q);
        ++expected[static_cast<std::size_t>(((r % m) + m) % m)];
      });
      ASSERT_EQ(class_counts(t, n, q).counts, expected);
    }
  }
}

TEST(Verdicts, Names) {
  EXPECT_EQ(to_string(Verdict::holds), "holds");
  EXPECT_EQ(to_string(Verdict::fails), "fails");
  EXPECT_EQ(to_string(Verdict::not_applicable), "not-applicable");
  EXPECT_EQ(to_string(Verdict::out_of_budget), "out-of-budget");
}

TEST(Ramanujan, SweepHolds) {
  const auto r = verify_ramanujan(200);
  EXPECT_EQ(r.summary().checked, 4u * 201u);
  EXPECT_EQ(r.summary().fails, 0u);
  EXPECT_EQ(r.unexpected_failures(), 0u);
}

TEST(Ramanujan, ZeroBoundStillChecksFirstTerms) {
  const auto r = verify_ramanujan(0);
  ASSERT_EQ(r.instances().size(), 4u);
  for (const auto& inst : r.instances()) EXPECT_EQ(inst.verdict, Verdict::holds);
}

TEST(ThetaForm, RamanujanPrimesHold) {
  for (std::int64_t l : {5, 7, 11}) {
    const auto r = verify_theta_form(l, 100);
    EXPECT_FALSE(r.failures_expected());
    EXPECT_EQ(r.summary().holds, 100u) << "l=" << l;
  }
}

TEST(ThetaForm, ThirteenFailsAsExpected) {
  const auto r = verify_theta_form(13, 5);
  EXPECT_TRUE(r.failures_expected());
  EXPECT_EQ(r.summary().fails, 5u);  // p(6), p(19), p(32), p(45), p(58) mod 13
  EXPECT_EQ(r.unexpected_failures(), 0u);
  EXPECT_EQ(r.instances()[0].inputs[2].second, "6");
  EXPECT_EQ(verify_theta_form(13, 0).summary().checked, 0u);
}

TEST(ThetaForm, RejectsBadPrimes) {
  EXPECT_THROW(verify_theta_form(3, 5), std::invalid_argument);
  EXPECT_THROW(verify_theta_form(9, 5), std::invalid_argument);
  EXPECT_THROW(verify_theta_form(10, 5), std::invalid_argument);
}

TEST(Dyson, RankClassesEqual) {
  const auto r = verify_dyson_rank(4);
  EXPECT_EQ(r.summary().checked, 10u);
  EXPECT_EQ(r.summary().fails, 0u);
}

TEST(Dyson, RankClassesModElevenDoNotSplitEvenly) {
  // the rank fails where the crank succeeds: n = 6 has 11 partitions
  const auto t = build_stat_table(Statistic::rank, 6);
  EXPECT_FALSE(class_counts(t, 6, 11).all_equal());
}

TEST(Dyson, CrankGuessHolds) {
  const auto r = verify_dyson_crank_guess(20);
  EXPECT_EQ(r.summary().checked, 21u);
  EXPECT_EQ(r.summary().fails, 0u);
}

TEST(Dyson, TableValidation) {
  const auto crank = build_stat_table(Statistic::crank, 20);
  EXPECT_THROW(verify_dyson_rank(crank, 1), std::invalid_argument);
  EXPECT_THROW(verify_dyson_crank_guess(crank, 5), std::invalid_argument);
  const auto rank = build_stat_table(Statistic::rank, 20);
  EXPECT_THROW(verify_dyson_crank_guess(rank, 1), std::invalid_argument);
}
