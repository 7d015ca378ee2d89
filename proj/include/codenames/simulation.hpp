#pragma once

#include <optional>

#include "codenames/outcome.hpp"
#include "codenames/rng.hpp"

namespace codenames {

// A team abstracted to its per-turn outcome distribution.
struct SimOutcomeModel {
  OutcomeDistribution dist;
};

// How random teams are drawn for training data and surface exploration.
enum class VectorScheme {
  // Per-team skill parameters: a clue size n in 1..6 with Dirichlet(1)
  // weights, per-guess accuracy p ~ U(0.3, 1), and a turn-ending error
  // split between assassin (share ~ U(0, 0.05)) and Dirichlet(1, 1) over
  // opponent and bystander. A turn with clue n reveals k < n team cards
  // then an error with probability p^k (1 - p), or n team cards with p^n.
  Structural,
  // Sparsity s ~ U{2..10}, s distinct outcome slots, Dirichlet(1) mass.
  Sparse,
};

OutcomeDistribution sample_outcome_vector(Rng& rng, VectorScheme scheme = VectorScheme::Structural);
OutcomeDistribution sample_structural_vector(Rng& rng);
OutcomeDistribution sample_sparse_vector(Rng& rng);

// Card tallies of a game played without words. Turn outcomes are drawn from
// a distribution restricted to what the remaining cards allow.
class AbstractGame {
 public:
  enum class Result { Ongoing, FirstWins, SecondWins };

  explicit AbstractGame(bool solitaire);

  int remaining(int team) const { return remaining_[team]; }
  int bystanders() const { return bystanders_; }
  int acting() const { return acting_; }
  int turns() const { return turns_; }
  Result result() const { return result_; }
  bool over() const { return result_ != Result::Ongoing; }

  bool feasible(TurnOutcome o) const;

  // Samples from dist with infeasible outcomes zeroed and the rest
  // renormalized. If nothing feasible has mass, the most likely outcome is
  // projected onto the nearest feasible one. A draw that would finish the
  // team's cards is reported without its adverse card.
  TurnOutcome draw(const OutcomeDistribution& dist, Rng& rng) const;

  // Applies a feasible outcome for the acting team and passes the turn.
  void apply(TurnOutcome o);

 private:
  TurnOutcome project(TurnOutcome o) const;
  TurnOutcome settle(TurnOutcome o) const;

  bool solitaire_;
  int remaining_[2] = {9, 8};
  int bystanders_ = 7;
  int acting_ = 0;
  int turns_ = 0;
  Result result_ = Result::Ongoing;
};

// Fraction of n_games won by a, who moves first with 9 cards against b's 8.
double simulate_competitive(const SimOutcomeModel& a, const SimOutcomeModel& b, int n_games, Rng& rng);

struct SolitaireStats {
  double win_rate = 0.0;
  std::optional<double> win_time;  // mean turns over won games; empty if none won
};

SolitaireStats simulate_solitaire(const SimOutcomeModel& a, int n_games, Rng& rng);

}  // namespace codenames
