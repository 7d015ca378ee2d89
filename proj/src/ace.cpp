#include "codenames/ace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "codenames/errors.hpp"

namespace codenames {

EnsembleState::EnsembleState(std::size_t n_experts, ColtWeights weights, double c, bool shared_credit,
                             SelectionRule rule, std::uint64_t seed)
    : counts_(n_experts),
      selections_(n_experts, 0),
      weights_(std::move(weights)),
      c_(c),
      shared_credit_(shared_credit),
      rule_(rule),
      rng_(seed) {
  if (n_experts == 0) throw InvalidInput("an ensemble needs at least one expert");
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidInput("exploration constant must be finite and >= 0");
}

const OutcomeCounts& EnsembleState::counts(std::size_t i) const {
  if (i >= counts_.size()) throw InvalidInput("unknown expert id " + std::to_string(i));
  return counts_[i];
}

std::int64_t EnsembleState::selections(std::size_t i) const {
  if (i >= selections_.size()) throw InvalidInput("unknown expert id " + std::to_string(i));
  return selections_[i];
}

double EnsembleState::ucb_score(std::size_t i) const {
  const OutcomeCounts& ci = counts(i);
  const std::int64_t n = ci.total();
  if (n == 0) return std::numeric_limits<double>::infinity();
  const double exploit = rate(weights_, counts_to_distribution(ci));
  if (c_ == 0.0) return exploit;
  return exploit + c_ * std::sqrt(std::log(static_cast<double>(total_)) / static_cast<double>(n));
}

std::size_t EnsembleState::select_expert() {
  if (rule_ == SelectionRule::Uniform) return static_cast<std::size_t>(rng_.below(size()));
  std::vector<std::size_t> best;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const double s = ucb_score(i);
    if (s > top) {
      top = s;
      best.assign(1, i);
    } else if (s == top) {
      best.push_back(i);
    }
  }
  if (best.size() == 1) return best.front();
  return best[static_cast<std::size_t>(rng_.below(best.size()))];
}

void EnsembleState::record_outcome(std::size_t chosen, TurnOutcome outcome, std::span<const std::size_t> same_action) {
  if (chosen >= size()) throw InvalidInput("unknown expert id " + std::to_string(chosen));
  if (!is_legal(outcome)) throw InvalidOutcome("illegal outcome recorded");
  for (std::size_t j : same_action) {
    if (j >= size()) throw InvalidInput("unknown expert id " + std::to_string(j));
    if (j == chosen) throw InvalidInput("the played expert cannot also be listed as a same-action expert");
  }
  counts_[chosen].add(outcome);
  ++selections_[chosen];
  if (shared_credit_) {
    for (std::size_t j : same_action) counts_[j].add(outcome);
  }
  ++total_;
}

std::vector<std::string> EnsembleConfig::active_experts() const {
  std::vector<std::string> out;
  for (const std::string& e : experts) {
    if (std::find(exclude.begin(), exclude.end(), e) == exclude.end()) out.push_back(e);
  }
  if (out.empty()) throw ConfigError("ensemble has no experts left after exclusions");
  return out;
}

namespace {

std::string ensemble_name(const char* prefix, std::size_t n) { return std::string(prefix) + "(" + std::to_string(n) + ")"; }

}  // namespace

AceSpymaster::AceSpymaster(std::vector<std::unique_ptr<Spymaster>> experts, EnsembleState state)
    : experts_(std::move(experts)), state_(std::move(state)) {
  if (experts_.size() != state_.size()) throw InvalidInput("expert count does not match ensemble state");
}

std::string AceSpymaster::name() const {
  return ensemble_name(state_.rule() == SelectionRule::Ucb ? "ACE" : "R", experts_.size());
}

Clue AceSpymaster::give_clue(const GameState& state) {
  chosen_ = state_.select_expert();
  const Clue clue = experts_[chosen_]->give_clue(state);
  same_.clear();
  if (state_.shared_credit()) {
    for (std::size_t j = 0; j < experts_.size(); ++j) {
      if (j != chosen_ && experts_[j]->give_clue(state) == clue) same_.push_back(j);
    }
  }
  pending_ = true;
  return clue;
}

void AceSpymaster::observe(TurnOutcome outcome) {
  if (!pending_) return;
  state_.record_outcome(chosen_, outcome, same_);
  for (auto& e : experts_) e->observe(outcome);
  pending_ = false;
}

AceGuesser::AceGuesser(std::vector<std::unique_ptr<Guesser>> experts, EnsembleState state)
    : experts_(std::move(experts)), state_(std::move(state)) {
  if (experts_.size() != state_.size()) throw InvalidInput("expert count does not match ensemble state");
}

std::string AceGuesser::name() const {
  return ensemble_name(state_.rule() == SelectionRule::Ucb ? "ACE" : "R", experts_.size());
}

std::vector<std::string> AceGuesser::make_guesses(const GameState& state, const Clue& clue) {
  chosen_ = state_.select_expert();
  std::vector<std::string> guesses = experts_[chosen_]->make_guesses(state, clue);
  same_.clear();
  if (state_.shared_credit()) {
    for (std::size_t j = 0; j < experts_.size(); ++j) {
      if (j != chosen_ && experts_[j]->make_guesses(state, clue) == guesses) same_.push_back(j);
    }
  }
  pending_ = true;
  return guesses;
}

void AceGuesser::observe(TurnOutcome outcome) {
  if (!pending_) return;
  state_.record_outcome(chosen_, outcome, same_);
  for (auto& e : experts_) e->observe(outcome);
  pending_ = false;
}

std::unique_ptr<AceSpymaster> make_ace_spymaster(const AgentRegistry& registry, const EnsembleConfig& cfg,
                                                 const ColtWeights& weights, std::uint64_t seed) {
  const auto codes = cfg.active_experts();
  std::vector<std::unique_ptr<Spymaster>> experts;
  for (const std::string& code : codes) experts.push_back(registry.make_spymaster(code));
  return std::make_unique<AceSpymaster>(std::move(experts),
                                        EnsembleState(codes.size(), weights, cfg.c, cfg.shared_credit, cfg.rule, seed));
}

std::unique_ptr<AceGuesser> make_ace_guesser(const AgentRegistry& registry, const EnsembleConfig& cfg,
                                             const ColtWeights& weights, std::uint64_t seed) {
  const auto codes = cfg.active_experts();
  std::vector<std::unique_ptr<Guesser>> experts;
  for (const std::string& code : codes) experts.push_back(registry.make_guesser(code));
  return std::make_unique<AceGuesser>(std::move(experts),
                                      EnsembleState(codes.size(), weights, cfg.c, cfg.shared_credit, cfg.rule, seed));
}

}  // namespace codenames
