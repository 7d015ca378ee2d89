#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "codenames/agents.hpp"
#include "codenames/colt.hpp"
#include "codenames/outcome.hpp"
#include "codenames/rng.hpp"

namespace codenames {

inline constexpr double kDefaultExploration = 0.5;

enum class SelectionRule { Ucb, Uniform };

// Bandit bookkeeping over a fixed set of experts, identified by index.
class EnsembleState {
 public:
  EnsembleState(std::size_t n_experts, ColtWeights weights, double c = kDefaultExploration,
                bool shared_credit = true, SelectionRule rule = SelectionRule::Ucb, std::uint64_t seed = 0);

  std::size_t size() const { return counts_.size(); }
  const OutcomeCounts& counts(std::size_t i) const;
  std::int64_t pulls(std::size_t i) const { return counts(i).total(); }
  std::int64_t total() const { return total_; }
  // Times expert i was the one actually played.
  std::int64_t selections(std::size_t i) const;
  double exploration() const { return c_; }
  bool shared_credit() const { return shared_credit_; }
  SelectionRule rule() const { return rule_; }
  const ColtWeights& weights() const { return weights_; }

  // +infinity for an unplayed expert, otherwise the rating of its empirical
  // outcome distribution plus c * sqrt(ln N / n_i).
  double ucb_score(std::size_t i) const;

  // Highest score, ties broken uniformly at random. Under the uniform rule
  // every expert is equally likely.
  std::size_t select_expert();

  // Credits the outcome to the played expert and, with shared credit on, to
  // every expert that proposed the same action. N grows by one per call.
  void record_outcome(std::size_t chosen, TurnOutcome outcome, std::span<const std::size_t> same_action = {});

 private:
  std::vector<OutcomeCounts> counts_;
  std::vector<std::int64_t> selections_;
  std::int64_t total_ = 0;
  ColtWeights weights_;
  double c_;
  bool shared_credit_;
  SelectionRule rule_;
  Rng rng_;
};

struct EnsembleConfig {
  std::vector<std::string> experts;
  double c = kDefaultExploration;
  bool shared_credit = true;
  std::vector<std::string> exclude;  // e.g. the teammate's matching partner
  SelectionRule rule = SelectionRule::Ucb;

  // experts minus exclude, order preserved. Throws ConfigError if empty.
  std::vector<std::string> active_experts() const;
};

// Spymaster that picks one expert clue per turn. Experts whose clue equals
// the played one share its credit.
class AceSpymaster : public Spymaster {
 public:
  AceSpymaster(std::vector<std::unique_ptr<Spymaster>> experts, EnsembleState state);

  std::string name() const override;
  Clue give_clue(const GameState& state) override;
  void observe(TurnOutcome outcome) override;

  const EnsembleState& ensemble() const { return state_; }
  std::size_t last_choice() const { return chosen_; }

 private:
  std::vector<std::unique_ptr<Spymaster>> experts_;
  EnsembleState state_;
  std::size_t chosen_ = 0;
  std::vector<std::size_t> same_;
  bool pending_ = false;
};

// Guesser counterpart; actions match when the full guess lists are equal.
class AceGuesser : public Guesser {
 public:
  AceGuesser(std::vector<std::unique_ptr<Guesser>> experts, EnsembleState state);

  std::string name() const override;
  std::vector<std::string> make_guesses(const GameState& state, const Clue& clue) override;
  void observe(TurnOutcome outcome) override;

  const EnsembleState& ensemble() const { return state_; }
  std::size_t last_choice() const { return chosen_; }

 private:
  std::vector<std::unique_ptr<Guesser>> experts_;
  EnsembleState state_;
  std::size_t chosen_ = 0;
  std::vector<std::size_t> same_;
  bool pending_ = false;
};

std::unique_ptr<AceSpymaster> make_ace_spymaster(const AgentRegistry& registry, const EnsembleConfig& cfg,
                                                 const ColtWeights& weights, std::uint64_t seed);
std::unique_ptr<AceGuesser> make_ace_guesser(const AgentRegistry& registry, const EnsembleConfig& cfg,
                                             const ColtWeights& weights, std::uint64_t seed);

}  // namespace codenames
