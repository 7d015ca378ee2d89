#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace codenames {

inline constexpr int kNumOutcomes = 36;

// The turn-ending card revealed on a turn, if any.
enum class Adverse : std::uint8_t { None = 0, Opponent = 1, Bystander = 2, Assassin = 3 };

// Result of one turn: how many of the acting team's cards were revealed, and
// which adverse card (at most one) ended the turn.
struct TurnOutcome {
  int team_flips = 0;
  Adverse adverse = Adverse::None;

  friend bool operator==(const TurnOutcome&, const TurnOutcome&) = default;
};

bool is_legal(TurnOutcome o);

// Canonical index in [0, 36): team_flips ascending, then None, Opponent,
// Bystander, Assassin, skipping (0, None) and (9, adverse). This is the
// column-major order of the published weight table.
int outcome_index(TurnOutcome o);
int outcome_index(std::string_view label);

TurnOutcome outcome_at(int index);

// Four-digit "tob a" label, e.g. "2010" for two team cards then a bystander.
std::string outcome_label(TurnOutcome o);
std::string outcome_label(int index);

TurnOutcome parse_outcome_label(std::string_view label);

const std::array<TurnOutcome, kNumOutcomes>& all_outcomes();

// Raw per-outcome tallies (the count vector of one ensemble arm).
class OutcomeCounts {
 public:
  OutcomeCounts() { counts_.fill(0); }

  void add(TurnOutcome o, std::int64_t times = 1);
  void add(int index, std::int64_t times = 1);
  OutcomeCounts& operator+=(const OutcomeCounts& other);

  std::int64_t operator[](int index) const { return counts_.at(static_cast<std::size_t>(index)); }
  std::int64_t total() const { return total_; }
  const std::array<std::int64_t, kNumOutcomes>& values() const { return counts_; }

  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;

 private:
  std::array<std::int64_t, kNumOutcomes> counts_;
  std::int64_t total_ = 0;
};

// Probability distribution over the 36 outcomes. Always non-negative and
// summing to one within 1e-9.
class OutcomeDistribution {
 public:
  // Validates; throws InvalidInput if negative, non-finite or not normalized.
  explicit OutcomeDistribution(const std::array<double, kNumOutcomes>& probs);

  static OutcomeDistribution one_hot(int index);
  static OutcomeDistribution one_hot(std::string_view label);
  static OutcomeDistribution uniform();
  // Normalizes arbitrary non-negative masses with a positive sum.
  static OutcomeDistribution from_masses(const std::array<double, kNumOutcomes>& masses);

  double operator[](int index) const { return probs_.at(static_cast<std::size_t>(index)); }
  const std::array<double, kNumOutcomes>& probs() const { return probs_; }
  std::span<const double, kNumOutcomes> span() const { return probs_; }

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;

 private:
  std::array<double, kNumOutcomes> probs_;
};

// Element-wise counts / total. Throws EmptyCounts when total is zero.
OutcomeDistribution counts_to_distribution(const OutcomeCounts& counts);

}  // namespace codenames
