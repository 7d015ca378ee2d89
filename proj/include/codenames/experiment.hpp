#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codenames/ace.hpp"
#include "codenames/colt.hpp"
#include "codenames/harness.hpp"
#include "codenames/outcome.hpp"

namespace codenames {

struct ExperimentConfig {
  enum class Mode { Agents, Simulated };
  struct AgentFiles {
    std::filesystem::path spymaster;
    std::filesystem::path guesser;
  };

  Mode mode = Mode::Agents;
  std::map<std::string, AgentFiles> agents;
  std::vector<std::string> spymasters;  // defaults to every bound code
  std::vector<std::string> guessers;
  std::map<std::string, OutcomeDistribution> sim_experts;
  std::optional<std::string> sim_partner;  // expert dropped in without-partner runs
  std::set<std::string> conditions = {"static", "ace", "random", "best_average"};
  bool without_partner = true;
  double c = kDefaultExploration;
  bool shared_credit = true;
  std::vector<std::string> words;  // empty: shared vocabulary of all bound models
  int repetitions = kDefaultRepetitions;
  int games_per_block = kDefaultGamesPerBlock;
  int threads = 0;
  std::uint64_t seed = 1;
  bool write_logs = true;
  ColtWeights weights = shipped_weights();

  // JSON object (comments allowed). Relative paths resolve against
  // base_dir. Unknown keys and wrong types throw ConfigError; malformed
  // JSON throws ParseError with its line.
  static ExperimentConfig parse(std::istream& in, const std::filesystem::path& base_dir,
                                const std::string& source = "<stream>");
  static ExperimentConfig load(const std::filesystem::path& path);
};

// Writes results.csv, tables.txt, timeseries.csv and logs.jsonl into out_dir.
// Progress lines go to progress when given.
void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                    std::ostream* progress = nullptr);

// Aggregates of one pairing recomputed from a turn log.
struct LogSummary {
  std::string pairing;  // game_id without its repetition and game parts
  int repetitions = 0;
  int games = 0;
  PairingSummary summary;
};

// Reads line-delimited turn records (only game_id and outcome_code are
// used). Game ids of the form prefix/rep/game are grouped by prefix and
// summarized per repetition; other ids form one repetition per file.
std::vector<LogSummary> rate_logs(std::istream& in, const ColtWeights& weights, const std::string& source = "<stream>");

}  // namespace codenames
