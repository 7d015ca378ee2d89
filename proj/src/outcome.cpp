#include "codenames/outcome.hpp"

#include <cmath>
#include <numeric>

#include "codenames/errors.hpp"

namespace codenames {

bool is_legal(TurnOutcome o) {
  if (o.team_flips < 0 || o.team_flips > 9) return false;
  if (o.team_flips == 0 && o.adverse == Adverse::None) return false;
  if (o.team_flips == 9 && o.adverse != Adverse::None) return false;
  return static_cast<int>(o.adverse) <= 3;
}

int outcome_index(TurnOutcome o) {
  if (!is_legal(o)) throw InvalidOutcome("infeasible outcome " + outcome_label(o));
  const int adverse = static_cast<int>(o.adverse);
  if (o.team_flips == 0) return adverse - 1;
  return 3 + (o.team_flips - 1) * 4 + adverse;
}

TurnOutcome outcome_at(int index) {
  if (index < 0 || index >= kNumOutcomes) {
    throw InvalidOutcome("outcome index out of range: " + std::to_string(index));
  }
  if (index < 3) return {0, static_cast<Adverse>(index + 1)};
  const int k = index - 3;
  return {k / 4 + 1, static_cast<Adverse>(k % 4)};
}

std::string outcome_label(TurnOutcome o) {
  std::string s(4, '0');
  s[0] = static_cast<char>('0' + (o.team_flips >= 0 && o.team_flips <= 9 ? o.team_flips : 0));
  if (o.adverse != Adverse::None) s[static_cast<std::size_t>(o.adverse)] = '1';
  return s;
}

std::string outcome_label(int index) { return outcome_label(outcome_at(index)); }

TurnOutcome parse_outcome_label(std::string_view label) {
  const std::string shown(label);
  if (label.size() != 4) throw InvalidOutcome("outcome label must have 4 digits: '" + shown + "'");
  if (label[0] < '0' || label[0] > '9') throw InvalidOutcome("bad team digit in '" + shown + "'");
  TurnOutcome o{label[0] - '0', Adverse::None};
  int flags = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (label[i] == '1') {
      o.adverse = static_cast<Adverse>(i);
      ++flags;
    } else if (label[i] != '0') {
      throw InvalidOutcome("adverse digits must be 0 or 1: '" + shown + "'");
    }
  }
  if (flags > 1) throw InvalidOutcome("at most one adverse card per turn: '" + shown + "'");
  if (!is_legal(o)) throw InvalidOutcome("infeasible outcome '" + shown + "'");
  return o;
}

int outcome_index(std::string_view label) { return outcome_index(parse_outcome_label(label)); }

const std::array<TurnOutcome, kNumOutcomes>& all_outcomes() {
  static const auto table = [] {
    std::array<TurnOutcome, kNumOutcomes> t{};
    for (int i = 0; i < kNumOutcomes; ++i) t[static_cast<std::size_t>(i)] = outcome_at(i);
    return t;
  }();
  return table;
}

void OutcomeCounts::add(TurnOutcome o, std::int64_t times) { add(outcome_index(o), times); }

void OutcomeCounts::add(int index, std::int64_t times) {
  if (times < 0) throw InvalidInput("outcome counts cannot decrease");
  counts_.at(static_cast<std::size_t>(index)) += times;
  total_ += times;
}

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& other) {
  for (int i = 0; i < kNumOutcomes; ++i) add(i, other[i]);
  return *this;
}

OutcomeDistribution::OutcomeDistribution(const std::array<double, kNumOutcomes>& probs)
    : probs_(probs) {
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidInput("outcome probabilities must be finite and non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidInput("outcome probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

OutcomeDistribution OutcomeDistribution::one_hot(int index) {
  std::array<double, kNumOutcomes> p{};
  p.at(static_cast<std::size_t>(outcome_index(outcome_at(index)))) = 1.0;
  return OutcomeDistribution(p);
}

OutcomeDistribution OutcomeDistribution::one_hot(std::string_view label) {
  return one_hot(outcome_index(label));
}

OutcomeDistribution OutcomeDistribution::uniform() {
  std::array<double, kNumOutcomes> p;
  p.fill(1.0 / kNumOutcomes);
  return OutcomeDistribution(p);
}

OutcomeDistribution OutcomeDistribution::from_masses(const std::array<double, kNumOutcomes>& masses) {
  double sum = 0.0;
  for (double m : masses) {
    if (!std::isfinite(m) || m < 0.0) throw InvalidInput("outcome masses must be finite and non-negative");
    sum += m;
  }
  if (!(sum > 0.0)) throw InvalidInput("outcome masses sum to zero");
  std::array<double, kNumOutcomes> p;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = masses[i] / sum;
  return OutcomeDistribution(p);
}

OutcomeDistribution counts_to_distribution(const OutcomeCounts& counts) {
  if (counts.total() == 0) throw EmptyCounts("cannot normalize empty outcome counts");
  std::array<double, kNumOutcomes> p;
  const double n = static_cast<double>(counts.total());
  for (int i = 0; i < kNumOutcomes; ++i) p[static_cast<std::size_t>(i)] = static_cast<double>(counts[i]) / n;
  return OutcomeDistribution(p);
}

}  // namespace codenames
