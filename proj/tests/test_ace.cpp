#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "codenames/ace.hpp"
#include "codenames/errors.hpp"
#include "support.hpp"

using namespace codenames;

namespace {

TurnOutcome label(const char* s) { return parse_outcome_label(s); }

TurnOutcome draw_outcome(const OutcomeDistribution& d, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int k = 0; k < kNumOutcomes; ++k) {
    acc += d[k];
    if (u < acc) return outcome_at(k);
  }
  return outcome_at(kNumOutcomes - 1);
}

OutcomeDistribution mix(std::initializer_list<std::pair<const char*, double>> parts) {
  std::array<double, kNumOutcomes> m{};
  for (const auto& [l, p] : parts) m[static_cast<std::size_t>(outcome_index(l))] += p;
  return OutcomeDistribution::from_masses(m);
}

}  // namespace

TEST(Ucb, UnplayedExpertScoresInfinity) {
  EnsembleState s(3, shipped_weights());
  EXPECT_EQ(s.ucb_score(0), std::numeric_limits<double>::infinity());
  s.record_outcome(1, label("2000"));
  EXPECT_EQ(s.ucb_score(0), std::numeric_limits<double>::infinity());
  EXPECT_TRUE(std::isfinite(s.ucb_score(1)));
}

TEST(Ucb, HandComputedExample) {
  EnsembleState s(2, shipped_weights(), 0.5, false);
  s.record_outcome(0, label("9000"));
  s.record_outcome(1, label("0010"));
  EXPECT_EQ(s.total(), 2);
  EXPECT_NEAR(s.ucb_score(0), 1.528 + 0.5 * std::sqrt(std::log(2.0)), 1e-9);
  EXPECT_NEAR(s.ucb_score(0), 1.9443, 5e-5);
}

TEST(Ucb, ZeroExplorationIsPureRating) {
  EnsembleState s(2, shipped_weights(), 0.0, false);
  s.record_outcome(0, label("3000"));
  s.record_outcome(0, label("1010"));
  s.record_outcome(1, label("2000"));
  EXPECT_DOUBLE_EQ(s.ucb_score(0), (2.274 + 0.007) / 2);
  EXPECT_DOUBLE_EQ(s.ucb_score(1), 1.941);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(s.select_expert(), 1u);
}

TEST(Ucb, GreedyWithoutExplorationTracksCurrentBest) {
  Rng rng(1);
  EnsembleState s(4, shipped_weights(), 0.0, false, SelectionRule::Ucb, 2);
  for (std::size_t i = 0; i < 4; ++i) s.record_outcome(i, outcome_at(static_cast<int>(rng.below(kNumOutcomes))));
  for (int t = 0; t < 300; ++t) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i) {
      if (s.ucb_score(i) > s.ucb_score(best)) best = i;
    }
    bool tied = false;
    for (std::size_t i = 0; i < 4; ++i) tied |= i != best && s.ucb_score(i) == s.ucb_score(best);
    const std::size_t pick = s.select_expert();
    if (!tied) EXPECT_EQ(pick, best);
    s.record_outcome(pick, outcome_at(static_cast<int>(rng.below(kNumOutcomes))));
  }
}

TEST(Ucb, ColdStartSelectsEachExpertOnce) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (std::size_t m : {1u, 2u, 4u, 7u}) {
      EnsembleState s(m, shipped_weights(), 0.5, true, SelectionRule::Ucb, seed);
      std::vector<int> hits(m, 0);
      for (std::size_t t = 0; t < m; ++t) {
        const std::size_t pick = s.select_expert();
        ++hits[pick];
        s.record_outcome(pick, label("0001"));
      }
      for (int h : hits) EXPECT_EQ(h, 1);
    }
  }
}

TEST(Ucb, FreshTiesAreBrokenUniformly) {
  std::array<int, 4> first{};
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    EnsembleState s(4, shipped_weights(), 0.5, true, SelectionRule::Ucb, seed);
    ++first[s.select_expert()];
  }
  const double sd = std::sqrt(4000 * 0.25 * 0.75);
  for (int f : first) EXPECT_NEAR(f, 1000, 4 * sd);
}

TEST(Ucb, AssassinOutcomeLowersScore) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    EnsembleState s(3, shipped_weights(), 0.5, false);
    const int turns = 1 + static_cast<int>(rng.below(30));
    for (int t = 0; t < turns; ++t) {
      s.record_outcome(rng.below(3), outcome_at(static_cast<int>(rng.below(kNumOutcomes - 1)) + 1));
    }
    const std::size_t q = rng.below(3);
    if (s.pulls(q) == 0) s.record_outcome(q, label("4000"));
    const double before = s.ucb_score(q);
    s.record_outcome(q, label("0001"));
    EXPECT_LT(s.ucb_score(q), before) << trial;
  }
}

TEST(Credit, RecordsCountsAndTotals) {
  EnsembleState s(5, shipped_weights());
  s.record_outcome(3, label("2010"));
  EXPECT_EQ(s.counts(3)[outcome_index("2010")], 1);
  EXPECT_EQ(s.pulls(3), 1);
  EXPECT_EQ(s.total(), 1);
  s.record_outcome(0, label("1000"));
  EXPECT_EQ(s.total(), 2);
}

TEST(Credit, SharedCreditUpdatesMatchingExperts) {
  EnsembleState on(5, shipped_weights(), 0.5, true);
  const std::vector<std::size_t> same{1, 4};
  on.record_outcome(2, label("3000"), same);
  EXPECT_EQ(on.total(), 1);
  for (std::size_t i : {1u, 2u, 4u}) EXPECT_EQ(on.counts(i)[outcome_index("3000")], 1);
  EXPECT_EQ(on.pulls(0), 0);
  EXPECT_EQ(on.selections(2), 1);
  EXPECT_EQ(on.selections(1), 0);

  EnsembleState off(5, shipped_weights(), 0.5, false);
  off.record_outcome(2, label("3000"), same);
  EXPECT_EQ(off.pulls(1), 0);
  EXPECT_EQ(off.pulls(4), 0);
}

TEST(Credit, InvalidIdsRejected) {
  EnsembleState s(3, shipped_weights());
  const std::vector<std::size_t> self{0};
  const std::vector<std::size_t> unknown{7};
  EXPECT_THROW(s.record_outcome(3, label("1000")), InvalidInput);
  EXPECT_THROW(s.record_outcome(0, label("1000"), self), InvalidInput);
  EXPECT_THROW(s.record_outcome(0, label("1000"), unknown), InvalidInput);
  EXPECT_THROW(s.record_outcome(0, TurnOutcome{0, Adverse::None}), InvalidOutcome);
  EXPECT_THROW(s.ucb_score(3), InvalidInput);
  EXPECT_EQ(s.total(), 0);
  EXPECT_THROW(EnsembleState(0, shipped_weights()), InvalidInput);
  EXPECT_THROW(EnsembleState(2, shipped_weights(), -1.0), InvalidInput);
}

TEST(Credit, ConservationUnderFuzzing) {
  Rng rng(4);
  for (int run = 0; run < 20; ++run) {
    const std::size_t m = 1 + rng.below(6);
    EnsembleState s(m, shipped_weights(), 0.5, false, SelectionRule::Ucb, run);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t pick = rng.uniform() < 0.5 ? s.select_expert() : rng.below(m);
      std::vector<std::size_t> same;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != pick && rng.uniform() < 0.3) same.push_back(j);
      }
      s.record_outcome(pick, outcome_at(static_cast<int>(rng.below(kNumOutcomes))), same);
    }
    std::int64_t pulls = 0, selections = 0;
    for (std::size_t i = 0; i < m; ++i) {
      pulls += s.pulls(i);
      selections += s.selections(i);
    }
    EXPECT_EQ(pulls, s.total());
    EXPECT_EQ(selections, s.total());
    EXPECT_EQ(s.total(), 1000);
  }
}

TEST(Selection, UniformRuleIsUniform) {
  EnsembleState s(4, shipped_weights(), 0.5, false, SelectionRule::Uniform, 5);
  s.record_outcome(0, label("9000"));
  std::array<int, 4> hits{};
  const int n = 40000;
  for (int t = 0; t < n; ++t) ++hits[s.select_expert()];
  const double sd = std::sqrt(n * 0.25 * 0.75);
  for (int h : hits) EXPECT_NEAR(h, n / 4.0, 4 * sd);
}

TEST(Selection, BestExpertShareGrowsWithTurns) {
  const std::vector<OutcomeDistribution> experts = {
      mix({{"3000", 0.5}, {"2000", 0.3}, {"2010", 0.2}}),
      mix({{"1000", 0.4}, {"0010", 0.3}, {"1100", 0.3}}),
      mix({{"1010", 0.5}, {"0100", 0.3}, {"2000", 0.2}}),
  };
  const std::vector<int> checkpoints = {10, 50, 200, 800};
  std::vector<double> share(checkpoints.size(), 0.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EnsembleState s(experts.size(), shipped_weights(), 0.5, false, SelectionRule::Ucb, seed);
    Rng rng(derive_seed(seed, {1}));
    int best = 0;
    std::size_t next = 0;
    for (int t = 1; t <= checkpoints.back(); ++t) {
      const std::size_t pick = s.select_expert();
      best += pick == 0;
      s.record_outcome(pick, draw_outcome(experts[pick], rng));
      if (t == checkpoints[next]) share[next++] += static_cast<double>(best) / t / 200.0;
    }
  }
  for (std::size_t i = 1; i < share.size(); ++i) EXPECT_GT(share[i], share[i - 1]) << checkpoints[i];
}

TEST(EnsembleConfigTest, ExclusionKeepsOrder) {
  EnsembleConfig cfg;
  cfg.experts = {"w", "g5", "g1", "cn"};
  cfg.exclude = {"g1"};
  EXPECT_EQ(cfg.active_experts(), (std::vector<std::string>{"w", "g5", "cn"}));
  cfg.exclude = cfg.experts;
  EXPECT_THROW(cfg.active_experts(), ConfigError);
}

TEST(Wrappers, SingleExpertActsLikeItsExpert) {
  const auto model = testing_support::random_model(6, 300, 8, 60);
  AgentRegistry reg;
  reg.bind_models("w", model, model);
  EnsembleConfig cfg;
  cfg.experts = {"w"};
  auto ace_sm = make_ace_spymaster(reg, cfg, shipped_weights(), 1);
  auto ace_g = make_ace_guesser(reg, cfg, shipped_weights(), 1);
  EmbeddingSpymaster sm(model);
  EmbeddingGuesser g(model);
  EXPECT_EQ(ace_sm->name(), "ACE(1)");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GameState a = new_board(model->words(), seed, GameMode::Solitaire);
    GameState b = a;
    while (a.status().ongoing()) {
      play_turn(a, *ace_sm, *ace_g);
      play_turn(b, sm, g);
      EXPECT_EQ(a.turn_log().back(), b.turn_log().back());
    }
    EXPECT_EQ(a, b);
  }
  EXPECT_GT(ace_sm->ensemble().total(), 0);
}

TEST(Wrappers, IdenticalExpertsShareCredit) {
  const auto model = testing_support::random_model(7, 300, 8, 60);
  AgentRegistry reg;
  reg.bind_models("w", model, model);
  reg.bind_models("g5", model, model);
  EnsembleConfig cfg;
  cfg.experts = {"w", "g5"};
  auto sm = make_ace_spymaster(reg, cfg, shipped_weights(), 2);
  auto g = make_ace_guesser(reg, cfg, shipped_weights(), 3);
  GameState s = new_board(model->words(), 4, GameMode::Solitaire);
  play_turn(s, *sm, *g);
  EXPECT_EQ(sm->ensemble().total(), 1);
  EXPECT_EQ(sm->ensemble().pulls(0), 1);
  EXPECT_EQ(sm->ensemble().pulls(1), 1);
  EXPECT_EQ(g->ensemble().pulls(0) + g->ensemble().pulls(1), 2);

  cfg.shared_credit = false;
  cfg.rule = SelectionRule::Uniform;
  auto solo = make_ace_spymaster(reg, cfg, shipped_weights(), 2);
  EXPECT_EQ(solo->name(), "R(2)");
  GameState t = new_board(model->words(), 4, GameMode::Solitaire);
  EmbeddingGuesser plain(model);
  play_turn(t, *solo, plain);
  EXPECT_EQ(solo->ensemble().pulls(0) + solo->ensemble().pulls(1), 1);
}
