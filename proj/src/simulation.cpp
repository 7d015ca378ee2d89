#include "codenames/simulation.hpp"

#include <algorithm>
#include <numeric>

#include "codenames/errors.hpp"

namespace codenames {

OutcomeDistribution sample_outcome_vector(Rng& rng, VectorScheme scheme) {
  return scheme == VectorScheme::Sparse ? sample_sparse_vector(rng) : sample_structural_vector(rng);
}

OutcomeDistribution sample_structural_vector(Rng& rng) {
  constexpr int kMaxClue = 6;
  std::array<double, kMaxClue> clue_weight;
  double clue_total = 0.0;
  for (double& w : clue_weight) clue_total += (w = rng.exponential());
  const double accuracy = 0.3 + 0.7 * rng.uniform();
  const double assassin = 0.05 * rng.uniform();
  const double e_opp = rng.exponential();
  const double e_by = rng.exponential();
  const double opponent = (1.0 - assassin) * e_opp / (e_opp + e_by);
  const double bystander = (1.0 - assassin) - opponent;

  std::array<double, kNumOutcomes> masses{};
  auto bump = [&](int flips, Adverse a, double m) {
    masses[static_cast<std::size_t>(outcome_index(TurnOutcome{flips, a}))] += m;
  };
  for (int n = 1; n <= kMaxClue; ++n) {
    const double w = clue_weight[static_cast<std::size_t>(n - 1)] / clue_total;
    double reach = w;  // probability of getting k correct in a row
    for (int k = 0; k < n; ++k) {
      const double miss = reach * (1.0 - accuracy);
      bump(k, Adverse::Opponent, miss * opponent);
      bump(k, Adverse::Bystander, miss * bystander);
      bump(k, Adverse::Assassin, miss * assassin);
      reach *= accuracy;
    }
    bump(n, Adverse::None, reach);
  }
  return OutcomeDistribution::from_masses(masses);
}

OutcomeDistribution sample_sparse_vector(Rng& rng) {
  const int sparsity = 2 + static_cast<int>(rng.below(9));
  std::array<int, kNumOutcomes> slots;
  std::iota(slots.begin(), slots.end(), 0);
  for (int i = 0; i < sparsity; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(kNumOutcomes - i));
    std::swap(slots[static_cast<std::size_t>(i)], slots[j]);
  }
  std::array<double, kNumOutcomes> masses{};
  for (int i = 0; i < sparsity; ++i) masses[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] = rng.exponential();
  return OutcomeDistribution::from_masses(masses);
}

AbstractGame::AbstractGame(bool solitaire) : solitaire_(solitaire) {}

bool AbstractGame::feasible(TurnOutcome o) const {
  if (over() || !is_legal(o)) return false;
  if (o.team_flips > remaining_[acting_]) return false;
  switch (o.adverse) {
    case Adverse::Opponent: return remaining_[1 - acting_] > 0;
    case Adverse::Bystander: return bystanders_ > 0;
    default: return true;
  }
}

TurnOutcome AbstractGame::settle(TurnOutcome o) const {
  // Finding the last team card ends the game before any adverse reveal.
  if (o.team_flips == remaining_[acting_]) o.adverse = Adverse::None;
  return o;
}

TurnOutcome AbstractGame::project(TurnOutcome o) const {
  const int own = remaining_[acting_];
  if (o.team_flips >= own) return {own, Adverse::None};
  if (o.adverse == Adverse::Bystander && bystanders_ == 0) o.adverse = Adverse::Opponent;
  return o;
}

TurnOutcome AbstractGame::draw(const OutcomeDistribution& dist, Rng& rng) const {
  if (over()) throw InvalidInput("abstract game is already over");
  std::array<double, kNumOutcomes> mass{};
  double total = 0.0;
  int last_positive = -1;
  int most_likely = 0;
  for (int i = 0; i < kNumOutcomes; ++i) {
    if (dist[i] > dist[most_likely]) most_likely = i;
    if (dist[i] > 0.0 && feasible(outcome_at(i))) {
      mass[static_cast<std::size_t>(i)] = dist[i];
      total += dist[i];
      last_positive = i;
    }
  }
  if (last_positive < 0) return project(outcome_at(most_likely));

  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (int i = 0; i < kNumOutcomes; ++i) {
    const double m = mass[static_cast<std::size_t>(i)];
    if (m <= 0.0) continue;
    acc += m;
    if (u < acc) return settle(outcome_at(i));
  }
  return settle(outcome_at(last_positive));
}

void AbstractGame::apply(TurnOutcome o) {
  if (!feasible(o)) throw InvalidInput("outcome " + outcome_label(o) + " is infeasible here");
  const int me = acting_;
  const int them = 1 - acting_;
  const Result i_win = me == 0 ? Result::FirstWins : Result::SecondWins;
  const Result they_win = me == 0 ? Result::SecondWins : Result::FirstWins;
  ++turns_;

  remaining_[me] -= o.team_flips;
  if (remaining_[me] == 0) {
    result_ = i_win;
    return;
  }
  switch (o.adverse) {
    case Adverse::Assassin:
      result_ = they_win;
      return;
    case Adverse::Opponent:
      if (--remaining_[them] == 0) {
        result_ = they_win;
        return;
      }
      break;
    case Adverse::Bystander:
      --bystanders_;
      break;
    case Adverse::None:
      break;
  }
  if (!solitaire_) acting_ = them;
}

double simulate_competitive(const SimOutcomeModel& a, const SimOutcomeModel& b, int n_games, Rng& rng) {
  if (n_games < 1) throw InvalidInput("n_games must be at least 1");
  int wins = 0;
  for (int g = 0; g < n_games; ++g) {
    AbstractGame game(false);
    while (!game.over()) {
      const OutcomeDistribution& d = game.acting() == 0 ? a.dist : b.dist;
      game.apply(game.draw(d, rng));
    }
    wins += game.result() == AbstractGame::Result::FirstWins;
  }
  return static_cast<double>(wins) / n_games;
}

SolitaireStats simulate_solitaire(const SimOutcomeModel& a, int n_games, Rng& rng) {
  if (n_games < 1) throw InvalidInput("n_games must be at least 1");
  int wins = 0;
  long long won_turns = 0;
  for (int g = 0; g < n_games; ++g) {
    AbstractGame game(true);
    while (!game.over()) game.apply(game.draw(a.dist, rng));
    if (game.result() == AbstractGame::Result::FirstWins) {
      ++wins;
      won_turns += game.turns();
    }
  }
  SolitaireStats s;
  s.win_rate = static_cast<double>(wins) / n_games;
  if (wins > 0) s.win_time = static_cast<double>(won_turns) / wins;
  return s;
}

}  // namespace codenames
