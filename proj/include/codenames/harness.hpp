#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codenames/ace.hpp"
#include "codenames/agents.hpp"
#include "codenames/colt.hpp"
#include "codenames/game.hpp"
#include "codenames/rbf.hpp"
#include "codenames/simulation.hpp"

namespace codenames {

inline constexpr int kDefaultGamesPerBlock = 50;
inline constexpr int kDefaultRepetitions = 200;

// One side of a pairing: a fixed agent, an adaptive ensemble (ACE or the
// random baseline, chosen by ensemble.rule), or the best-average static agent
// which must be resolved to a code before play.
struct AgentSpec {
  enum class Kind { Static, Ensemble, BestAverage };
  Kind kind = Kind::Static;
  std::string code;
  EnsembleConfig ensemble;

  static AgentSpec fixed(std::string code);
  static AgentSpec ace(EnsembleConfig cfg);
  static AgentSpec random(EnsembleConfig cfg);
  static AgentSpec best_average();

  // "ACE", "R", "BA" or an agent code.
  std::string label() const;
};

// The teammate's matching partner: the agent built on the same language
// model. wg has none because its two roles use different embeddings.
std::optional<std::string> matching_partner(std::string_view code);

struct PairingConfig {
  AgentSpec spymaster;
  AgentSpec guesser;
  int games_per_block = kDefaultGamesPerBlock;
  int repetitions = kDefaultRepetitions;
  std::vector<std::string> words;  // board vocabulary
  std::uint64_t seed = 1;
  int threads = 0;
  bool keep_records = true;  // keep full turn records for log output
  ColtWeights weights = shipped_weights();

  void validate() const;
};

struct GameLog {
  std::vector<TurnOutcome> outcomes;
  std::vector<TurnRecord> turns;  // empty for simulated teammates

  // Won when all nine team cards were found.
  bool won() const;
  int rounds() const { return static_cast<int>(outcomes.size()); }
};

struct PairingResult {
  std::string spymaster;
  std::string guesser;
  int games_per_block = 0;
  std::vector<std::vector<GameLog>> repetitions;
};

struct MetricTriple {
  double colt = 0.0;
  double win_rate = 0.0;
  std::optional<double> win_time;  // absent when no game was won
};

// Rating of the pooled outcome counts, win fraction, and mean rounds over
// won games.
MetricTriple compute_metrics(std::span<const GameLog> games, const ColtWeights& weights);

// 1.96 * sample standard deviation / sqrt(n). Needs at least two samples.
double confidence_interval(std::span<const double> samples);

// Per-repetition metrics averaged across repetitions, with 95% half-widths
// (absent when fewer than two repetitions contribute).
struct PairingSummary {
  MetricTriple mean;
  std::optional<double> colt_ci, win_rate_ci, win_time_ci;
  int repetitions = 0;
};

PairingSummary summarize(const PairingResult& result, const ColtWeights& weights);

// Mean over repetitions of the rating of games with index >= t.
double colt_excluding_prefix(const PairingResult& result, int t, const ColtWeights& weights);

// For each game index, the mean over repetitions of that game's rating.
std::vector<double> colt_time_series(const PairingResult& result, const ColtWeights& weights);

// Plays repetitions x games_per_block solitaire games. Boards depend only on
// (seed, repetition, game), and adaptive agents start fresh each repetition.
PairingResult run_pairing(const PairingConfig& cfg, const AgentRegistry& registry);

// Engine-free pairing: each expert is the outcome distribution it achieves
// with a fixed teammate. One expert plays statically; several are run as an
// ensemble that picks an expert every turn.
struct SimulatedPairingConfig {
  std::vector<OutcomeDistribution> experts;
  SelectionRule rule = SelectionRule::Ucb;
  double c = kDefaultExploration;
  int games_per_block = kDefaultGamesPerBlock;
  int repetitions = kDefaultRepetitions;
  std::uint64_t seed = 1;
  int threads = 0;
  ColtWeights weights = shipped_weights();
};

PairingResult run_simulated_pairing(const SimulatedPairingConfig& cfg);

// Mean rating of static pairings: rows are spymasters, columns guessers.
struct ResultMatrix {
  std::vector<std::string> spymasters;
  std::vector<std::string> guessers;
  std::map<std::pair<std::string, std::string>, double> values;

  void set(const std::string& spymaster, const std::string& guesser, double v);
  std::optional<double> get(const std::string& spymaster, const std::string& guesser) const;
};

struct BestAverage {
  std::string spymaster;
  std::string guesser;
  // Every agent with teammates to average over, best mean first.
  std::vector<std::string> spymaster_ranking;
  std::vector<std::string> guesser_ranking;

  // Highest-ranked agent other than the teammate's matching partner.
  std::optional<std::string> spymaster_for(std::string_view guesser) const;
  std::optional<std::string> guesser_for(std::string_view spymaster) const;
};

// The spymaster with the best mean over guessers and the guesser with the
// best mean over spymasters. With without_partner set, each agent's mean
// skips its matching partner. Throws InvalidInput naming any missing pair.
BestAverage best_average_baseline(const ResultMatrix& matrix, bool without_partner = false);

// Rating as a function of solitaire (win rate, win time).
struct SurfaceConfig {
  int n_vectors = 50;
  int games_each = 200;
  std::vector<double> win_rates;  // grid columns
  std::vector<double> win_times;  // grid rows
  // Kernel width on the unit-scaled plane; 0 picks half the mean
  // nearest-neighbor spacing of the fitted samples.
  double width = 0.0;
  double ridge = 1e-9;
  std::uint64_t seed = 1;
  int threads = 0;
  VectorScheme scheme = VectorScheme::Structural;
  ColtWeights weights = shipped_weights();

  void validate() const;
};

struct SurfaceSample {
  double win_rate = 0.0;
  std::optional<double> win_time;
  double colt = 0.0;
};

struct SurfaceResult {
  std::vector<SurfaceSample> samples;  // all drawn vectors, winless ones included
  std::optional<GaussianRbf2> surface;
  double width = 0.0;  // kernel width actually used
  std::vector<double> win_rates, win_times;
  std::vector<std::vector<double>> grid;  // grid[row = win time][column = win rate]
};

// Draws n_vectors outcome distributions, measures each by solitaire
// simulation, fits the surface through those with at least one win, and
// evaluates it on the grid. Throws InvalidInput with fewer than 3 usable
// vectors.
SurfaceResult colt_surface(const SurfaceConfig& cfg);

// Output helpers.
void write_summary_csv_header(std::ostream& out);
void write_summary_csv_row(std::ostream& out, std::string_view condition, const PairingResult& result,
                           const PairingSummary& summary);
void write_time_series_csv(std::ostream& out, std::string_view condition, const PairingResult& result,
                           const ColtWeights& weights);
void write_pairing_logs(std::ostream& out, std::string_view condition, const PairingResult& result);
void write_surface_csv(std::ostream& out, const SurfaceResult& surface);

// Fixed-width text table with row and column labels. Missing cells print "-".
void write_table(std::ostream& out, std::string_view title, const std::vector<std::string>& rows,
                 const std::vector<std::string>& columns, const std::map<std::pair<std::string, std::string>, double>& cells,
                 int precision = 2);

}  // namespace codenames
