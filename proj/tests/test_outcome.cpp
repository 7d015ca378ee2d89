#include <gtest/gtest.h>

#include <set>

#include "codenames/errors.hpp"
#include "codenames/outcome.hpp"
#include "support.hpp"

using namespace codenames;

TEST(Outcome, EnumeratesThirtySixLabelsMatchingWeightTable) {
  std::set<std::string> expected;
  for (const auto& [label, w] : testing_support::published_weights()) expected.insert(label);
  std::set<std::string> got;
  for (const TurnOutcome& o : all_outcomes()) got.insert(outcome_label(o));
  EXPECT_EQ(all_outcomes().size(), 36u);
  EXPECT_EQ(got, expected);
}

TEST(Outcome, CanonicalOrderFollowsTable) {
  const auto& table = testing_support::published_weights();
  for (int i = 0; i < kNumOutcomes; ++i) EXPECT_EQ(outcome_label(i), table[static_cast<std::size_t>(i)].first);
}

TEST(Outcome, IndexRoundTrips) {
  for (int i = 0; i < kNumOutcomes; ++i) {
    EXPECT_EQ(outcome_index(outcome_at(i)), i);
    EXPECT_EQ(outcome_index(outcome_label(i)), i);
  }
}

TEST(Outcome, RejectsIllegalLabels) {
  for (const char* bad : {"0000", "9100", "9010", "9001", "3110", "1011", "abcd", "100", "10000", "1200"}) {
    EXPECT_THROW(parse_outcome_label(bad), InvalidOutcome) << bad;
  }
  EXPECT_FALSE(is_legal({0, Adverse::None}));
  EXPECT_FALSE(is_legal({10, Adverse::None}));
  EXPECT_FALSE(is_legal({-1, Adverse::Opponent}));
  EXPECT_THROW(outcome_at(36), InvalidOutcome);
  EXPECT_THROW(outcome_at(-1), InvalidOutcome);
}

TEST(Outcome, LabelEncodesFlipsAndAdverse) {
  EXPECT_EQ(outcome_label(TurnOutcome{2, Adverse::Bystander}), "2010");
  EXPECT_EQ(outcome_label(TurnOutcome{0, Adverse::Assassin}), "0001");
  EXPECT_EQ(parse_outcome_label("7100"), (TurnOutcome{7, Adverse::Opponent}));
}

TEST(OutcomeCounts, AccumulatesAndNormalizes) {
  OutcomeCounts c;
  c.add(TurnOutcome{2, Adverse::Bystander});
  c.add(outcome_index("9000"), 3);
  EXPECT_EQ(c.total(), 4);
  const auto d = counts_to_distribution(c);
  EXPECT_DOUBLE_EQ(d[outcome_index("2010")], 0.25);
  EXPECT_DOUBLE_EQ(d[outcome_index("9000")], 0.75);

  OutcomeCounts other;
  other.add(outcome_index("2010"));
  c += other;
  EXPECT_EQ(c[outcome_index("2010")], 2);
  EXPECT_EQ(c.total(), 5);
  EXPECT_THROW(c.add(0, -1), InvalidInput);
}

TEST(OutcomeCounts, EmptyCountsCannotBeNormalized) {
  EXPECT_THROW(counts_to_distribution(OutcomeCounts{}), EmptyCounts);
}

TEST(OutcomeDistribution, ValidatesMass) {
  std::array<double, kNumOutcomes> p{};
  p[0] = 0.5;
  EXPECT_THROW(OutcomeDistribution{p}, InvalidInput);
  p[1] = 0.5;
  EXPECT_NO_THROW(OutcomeDistribution{p});
  p[1] = 0.6;
  p[2] = -0.1;
  EXPECT_THROW(OutcomeDistribution{p}, InvalidInput);
  EXPECT_THROW(OutcomeDistribution::from_masses({}), InvalidInput);

  const auto u = OutcomeDistribution::uniform();
  double sum = 0.0;
  for (double x : u.probs()) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_EQ(OutcomeDistribution::one_hot("9000")[35], 1.0);
}
