#include "codenames/experiment.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>

#include "codenames/errors.hpp"
#include "json.hpp"
#include "text.hpp"

namespace codenames {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::string> read_word_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word list " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string w = detail::trim(line);
    if (!w.empty() && w.front() != '#') words.push_back(w);
  }
  return words;
}

// Typed access to one JSON object; errors name the offending key path.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + "must be an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [key, value] : j_.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        throw ConfigError("unknown key '" + name(key) + "'");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) const { return j_.at(key); }
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  std::string str(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_string()) bad(key, "a string");
    return at(key).get<std::string>();
  }
  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_boolean()) bad(key, "true or false");
    return at(key).get<bool>();
  }
  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_number()) bad(key, "a number");
    return at(key).get<double>();
  }
  std::uint64_t count(const char* key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_number_unsigned()) bad(key, "a non-negative integer");
    return at(key).get<std::uint64_t>();
  }
  std::vector<std::string> strings(const char* key) const {
    if (!has(key)) return {};
    const json& v = at(key);
    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_string(); })) {
      bad(key, "an array of strings");
    }
    return v.get<std::vector<std::string>>();
  }

  [[noreturn]] void bad(const std::string& key, const std::string& expected) const {
    throw ConfigError("'" + name(key) + "' must be " + expected);
  }

 private:
  std::string where() const { return path_.empty() ? "config " : "'" + path_ + "' "; }

  const json& j_;
  std::string path_;
};

OutcomeDistribution distribution_from(const json& masses_json, const std::string& key) {
  if (!masses_json.is_object() || masses_json.empty()) {
    throw ConfigError("'" + key + "' must map outcome labels to masses");
  }
  std::array<double, kNumOutcomes> masses{};
  for (const auto& [label, mass] : masses_json.items()) {
    if (!mass.is_number() || mass.get<double>() < 0.0) {
      throw ConfigError("'" + key + "." + label + "' must be a non-negative number");
    }
    try {
      masses[static_cast<std::size_t>(outcome_index(label))] += mass.get<double>();
    } catch (const InvalidInput& e) {
      throw ConfigError("'" + key + "': " + e.what());
    }
  }
  try {
    return OutcomeDistribution::from_masses(masses);
  } catch (const InvalidInput& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

int checked_int(std::uint64_t v, const std::string& key) {
  if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) throw ConfigError("'" + key + "' is too large");
  return static_cast<int>(v);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in, const std::filesystem::path& base_dir,
                                         const std::string& source) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(e.byte, text.size()));
    const auto line = static_cast<std::size_t>(std::count(text.begin(), end, '\n')) + (e.byte > 0 ? 1 : 0);
    throw ParseError(source, std::max<std::size_t>(line, 1), e.what());
  }

  const Section top(root, "");
  top.allow({"mode", "agents", "spymasters", "guessers", "experts", "partner", "conditions", "without_partner",
             "ensemble", "words", "repetitions", "games_per_block", "threads", "seed", "logs", "weights"});

  ExperimentConfig cfg;
  const std::string mode = top.str("mode", "agents");
  if (mode == "agents") {
    cfg.mode = Mode::Agents;
  } else if (mode == "simulated") {
    cfg.mode = Mode::Simulated;
  } else {
    throw ConfigError("mode must be 'agents' or 'simulated', got '" + mode + "'");
  }

  if (top.has("agents")) {
    const Section agents(top.at("agents"), "agents");
    for (const auto& [code, value] : top.at("agents").items()) {
      AgentFiles& files = cfg.agents[code];
      if (value.is_string()) {
        files.spymaster = files.guesser = resolve(base_dir, value.get<std::string>());
        continue;
      }
      const Section roles(value, agents.name(code));
      roles.allow({"spymaster", "guesser"});
      if (!roles.has("spymaster") || !roles.has("guesser")) {
        throw ConfigError("agent '" + code + "' needs a file for both roles");
      }
      files.spymaster = resolve(base_dir, roles.str("spymaster", ""));
      files.guesser = resolve(base_dir, roles.str("guesser", ""));
    }
  }
  if (top.has("experts")) {
    const Section experts(top.at("experts"), "experts");
    for (const auto& [name, masses] : top.at("experts").items()) {
      cfg.sim_experts.emplace(name, distribution_from(masses, experts.name(name)));
    }
  }
  if (top.has("partner")) cfg.sim_partner = top.str("partner", "");

  cfg.spymasters = top.strings("spymasters");
  cfg.guessers = top.strings("guessers");
  if (cfg.spymasters.empty()) {
    for (const auto& [code, f] : cfg.agents) cfg.spymasters.push_back(code);
  }
  if (cfg.guessers.empty()) {
    for (const auto& [code, f] : cfg.agents) cfg.guessers.push_back(code);
  }
  if (top.has("conditions")) {
    const auto list = top.strings("conditions");
    cfg.conditions = std::set<std::string>(list.begin(), list.end());
    for (const std::string& c : cfg.conditions) {
      if (c != "static" && c != "ace" && c != "random" && c != "best_average") {
        throw ConfigError("unknown condition '" + c + "'");
      }
    }
  }
  cfg.without_partner = top.flag("without_partner", cfg.without_partner);
  if (top.has("ensemble")) {
    const Section ens(top.at("ensemble"), "ensemble");
    ens.allow({"c", "shared_credit"});
    cfg.c = ens.number("c", cfg.c);
    cfg.shared_credit = ens.flag("shared_credit", cfg.shared_credit);
  }
  if (top.has("words")) {
    if (top.at("words").is_string()) {
      cfg.words = read_word_file(resolve(base_dir, top.str("words", "")));
    } else {
      cfg.words = top.strings("words");
    }
  }
  cfg.repetitions = checked_int(top.count("repetitions", static_cast<std::uint64_t>(cfg.repetitions)), "repetitions");
  cfg.games_per_block =
      checked_int(top.count("games_per_block", static_cast<std::uint64_t>(cfg.games_per_block)), "games_per_block");
  cfg.threads = checked_int(top.count("threads", 0), "threads");
  cfg.seed = top.count("seed", cfg.seed);
  cfg.write_logs = top.flag("logs", cfg.write_logs);
  if (top.has("weights")) cfg.weights = load_weights(resolve(base_dir, top.str("weights", "")));

  if (cfg.repetitions < 1 || cfg.games_per_block < 1) {
    throw ConfigError("repetitions and games_per_block must be positive");
  }
  if (cfg.c < 0.0) throw ConfigError("ensemble.c must be non-negative");
  if (cfg.mode == Mode::Agents) {
    if (cfg.agents.empty()) throw ConfigError("no agents bound; add neighbor files under \"agents\"");
    for (const auto& list : {cfg.spymasters, cfg.guessers}) {
      for (const std::string& code : list) {
        if (!cfg.agents.count(code)) throw ConfigError("agent code '" + code + "' has no neighbor file");
      }
    }
  } else {
    if (cfg.sim_experts.empty()) throw ConfigError("simulated mode needs entries under \"experts\"");
    if (cfg.sim_partner && !cfg.sim_experts.count(*cfg.sim_partner)) {
      throw ConfigError("partner '" + *cfg.sim_partner + "' is not a simulated expert");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in, path.parent_path(), path.string());
}

namespace {

// Labels used for adaptive rows and columns in the text tables.
constexpr const char* kWithPartner = "";
constexpr const char* kWithoutPartner = "*";

struct Collected {
  std::string condition;
  PairingResult result;
  PairingSummary summary;
};

class Writer {
 public:
  Writer(const std::filesystem::path& dir, const ExperimentConfig& cfg, std::ostream* progress)
      : cfg_(cfg), progress_(progress) {
    std::filesystem::create_directories(dir);
    results_.open(dir / "results.csv");
    series_.open(dir / "timeseries.csv");
    if (cfg.write_logs) logs_.open(dir / "logs.jsonl");
    if (!results_ || !series_ || (cfg.write_logs && !logs_)) {
      throw ConfigError("cannot write into " + dir.string());
    }
    write_summary_csv_header(results_);
    series_ << "condition,spymaster,guesser,game,colt\n";
  }

  const Collected& add(std::string condition, PairingResult result) {
    PairingSummary summary = summarize(result, cfg_.weights);
    write_summary_csv_row(results_, condition, result, summary);
    write_time_series_csv(series_, condition, result, cfg_.weights);
    if (logs_.is_open()) {
      if (cfg_.mode == ExperimentConfig::Mode::Agents) {
        write_pairing_logs(logs_, condition, result);
      } else {
        write_outcome_logs(condition, result);
      }
    }
    if (progress_) {
      *progress_ << condition << " " << result.spymaster << " + " << result.guesser << ": CoLT "
                 << detail::format_double(summary.mean.colt) << ", win rate "
                 << detail::format_double(summary.mean.win_rate) << '\n';
    }
    for (auto& r : result.repetitions) {
      for (auto& g : r) g.turns.clear();
    }
    collected_.push_back({std::move(condition), std::move(result), summary});
    return collected_.back();
  }

  const std::deque<Collected>& collected() const { return collected_; }

 private:
  void write_outcome_logs(const std::string& condition, const PairingResult& result) {
    for (std::size_t r = 0; r < result.repetitions.size(); ++r) {
      for (std::size_t g = 0; g < result.repetitions[r].size(); ++g) {
        const std::string id = condition + "/" + result.spymaster + "/" + result.guesser + "/" + std::to_string(r) +
                               "/" + std::to_string(g);
        const auto& outcomes = result.repetitions[r][g].outcomes;
        for (std::size_t t = 0; t < outcomes.size(); ++t) {
          const nlohmann::json rec = {{"game_id", id}, {"turn_index", t}, {"outcome_code", outcome_label(outcomes[t])}};
          logs_ << rec.dump() << '\n';
        }
      }
    }
  }

  const ExperimentConfig& cfg_;
  std::ostream* progress_;
  std::ofstream results_, series_, logs_;
  std::deque<Collected> collected_;
};

bool has_experts(const EnsembleConfig& e) {
  return std::any_of(e.experts.begin(), e.experts.end(), [&](const std::string& x) {
    return std::find(e.exclude.begin(), e.exclude.end(), x) == e.exclude.end();
  });
}

using Cells = std::map<std::pair<std::string, std::string>, double>;

struct MetricCells {
  Cells colt, win_rate, win_time;

  void put(const std::string& row, const std::string& col, const PairingSummary& s) {
    colt[{row, col}] = s.mean.colt;
    win_rate[{row, col}] = s.mean.win_rate;
    if (s.mean.win_time) win_time[{row, col}] = *s.mean.win_time;
  }
};

void write_tables(std::ostream& out, const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                  const MetricCells& cells, const std::string& legend) {
  write_table(out, "CoLT", rows, cols, cells.colt);
  out << '\n';
  write_table(out, "Win rate", rows, cols, cells.win_rate);
  out << '\n';
  write_table(out, "Win time", rows, cols, cells.win_time);
  if (!legend.empty()) out << '\n' << legend;
}

void run_agent_experiment(const ExperimentConfig& cfg, Writer& writer, std::ostream& tables) {
  AgentRegistry registry;
  for (const auto& [code, files] : cfg.agents) registry.bind(code, files.spymaster, files.guesser);

  std::vector<std::string> words = cfg.words;
  if (words.empty()) {
    std::set<std::string> shared;
    bool first = true;
    for (const auto& [code, files] : cfg.agents) {
      for (const auto& model : {registry.spymaster_model(code), registry.guesser_model(code)}) {
        std::set<std::string> vocab(model->words().begin(), model->words().end());
        if (first) {
          shared = std::move(vocab);
          first = false;
        } else {
          std::set<std::string> keep;
          std::set_intersection(shared.begin(), shared.end(), vocab.begin(), vocab.end(),
                                std::inserter(keep, keep.begin()));
          shared = std::move(keep);
        }
      }
    }
    words.assign(shared.begin(), shared.end());
  }

  auto base = [&](AgentSpec sm, AgentSpec g) {
    PairingConfig p;
    p.spymaster = std::move(sm);
    p.guesser = std::move(g);
    p.games_per_block = cfg.games_per_block;
    p.repetitions = cfg.repetitions;
    p.words = words;
    p.seed = cfg.seed;
    p.threads = cfg.threads;
    p.keep_records = cfg.write_logs;
    p.weights = cfg.weights;
    return p;
  };
  auto ensemble = [&](std::vector<std::string> experts, std::optional<std::string> exclude) {
    EnsembleConfig e;
    e.experts = std::move(experts);
    e.c = cfg.c;
    e.shared_credit = cfg.shared_credit;
    if (exclude) e.exclude = {*exclude};
    return e;
  };

  MetricCells cells;
  std::vector<std::string> rows = cfg.spymasters, cols = cfg.guessers;
  ResultMatrix matrix;
  const bool need_static = cfg.conditions.count("static") || cfg.conditions.count("best_average");
  if (need_static) {
    for (const auto& sm : cfg.spymasters) {
      for (const auto& g : cfg.guessers) {
        const Collected& c = writer.add("static", run_pairing(base(AgentSpec::fixed(sm), AgentSpec::fixed(g)), registry));
        matrix.set(sm, g, c.summary.mean.colt);
        cells.put(sm, g, c.summary);
      }
    }
  }

  std::vector<bool> variants = {true};
  if (cfg.without_partner) variants.push_back(false);
  for (const bool with_partner : variants) {
    const std::string suffix = with_partner ? kWithPartner : kWithoutPartner;
    const std::string cond_suffix = with_partner ? "_with_partner" : "_without_partner";
    for (const auto& [name, rule] : {std::pair{"ace", SelectionRule::Ucb}, std::pair{"random", SelectionRule::Uniform}}) {
      if (!cfg.conditions.count(name)) continue;
      const std::string label = std::string(rule == SelectionRule::Ucb ? "ACE" : "R") + suffix;
      rows.push_back(label);
      cols.push_back(label);
      for (const auto& g : cfg.guessers) {
        const auto exclude = with_partner ? std::nullopt : matching_partner(g);
        EnsembleConfig e = ensemble(cfg.spymasters, exclude);
        e.rule = rule;
        if (!has_experts(e)) continue;
        AgentSpec spec = rule == SelectionRule::Ucb ? AgentSpec::ace(e) : AgentSpec::random(e);
        const Collected& c = writer.add(name + cond_suffix, run_pairing(base(spec, AgentSpec::fixed(g)), registry));
        cells.put(label, g, c.summary);
      }
      for (const auto& sm : cfg.spymasters) {
        const auto exclude = with_partner ? std::nullopt : matching_partner(sm);
        EnsembleConfig e = ensemble(cfg.guessers, exclude);
        e.rule = rule;
        if (!has_experts(e)) continue;
        AgentSpec spec = rule == SelectionRule::Ucb ? AgentSpec::ace(e) : AgentSpec::random(e);
        const Collected& c = writer.add(name + cond_suffix, run_pairing(base(AgentSpec::fixed(sm), spec), registry));
        cells.put(sm, label, c.summary);
      }
    }
    if (cfg.conditions.count("best_average")) {
      const BestAverage ba = best_average_baseline(matrix, !with_partner);
      const std::string label = "BA" + suffix;
      rows.push_back(label);
      cols.push_back(label);
      for (const auto& g : cfg.guessers) {
        const auto sm = with_partner ? std::optional(ba.spymaster) : ba.spymaster_for(g);
        if (!sm) continue;
        PairingResult r = run_pairing(base(AgentSpec::fixed(*sm), AgentSpec::fixed(g)), registry);
        r.spymaster = "BA(" + *sm + ")";
        cells.put(label, g, writer.add("best_average" + cond_suffix, std::move(r)).summary);
      }
      for (const auto& sm : cfg.spymasters) {
        const auto g = with_partner ? std::optional(ba.guesser) : ba.guesser_for(sm);
        if (!g) continue;
        PairingResult r = run_pairing(base(AgentSpec::fixed(sm), AgentSpec::fixed(*g)), registry);
        r.guesser = "BA(" + *g + ")";
        cells.put(sm, label, writer.add("best_average" + cond_suffix, std::move(r)).summary);
      }
    }
  }
  write_tables(tables, rows, cols, cells,
               "Rows are spymasters, columns guessers. Labels ending in * exclude the teammate's matching partner.\n");
}

void run_simulated_experiment(const ExperimentConfig& cfg, Writer& writer, std::ostream& tables) {
  auto base = [&](std::vector<OutcomeDistribution> experts, SelectionRule rule) {
    SimulatedPairingConfig s;
    s.experts = std::move(experts);
    s.rule = rule;
    s.c = cfg.c;
    s.games_per_block = cfg.games_per_block;
    s.repetitions = cfg.repetitions;
    s.seed = cfg.seed;
    s.threads = cfg.threads;
    s.weights = cfg.weights;
    return s;
  };

  MetricCells cells;
  std::vector<std::string> rows;
  const std::vector<std::string> cols = {"sim"};
  std::string best;
  double best_colt = 0.0;
  std::string best_without;
  double best_without_colt = 0.0;
  for (const auto& [name, dist] : cfg.sim_experts) {
    PairingResult r = run_simulated_pairing(base({dist}, SelectionRule::Ucb));
    r.spymaster = name;
    const Collected& c = writer.add("solo", std::move(r));
    if (cfg.conditions.count("static")) {
      rows.push_back(name);
      cells.put(name, "sim", c.summary);
    }
    if (best.empty() || c.summary.mean.colt > best_colt) {
      best = name;
      best_colt = c.summary.mean.colt;
    }
    if (name != cfg.sim_partner && (best_without.empty() || c.summary.mean.colt > best_without_colt)) {
      best_without = name;
      best_without_colt = c.summary.mean.colt;
    }
  }

  std::vector<bool> variants = {true};
  if (cfg.without_partner && cfg.sim_partner) variants.push_back(false);
  for (const bool with_partner : variants) {
    const std::string suffix = with_partner ? kWithPartner : kWithoutPartner;
    const std::string cond_suffix = with_partner ? "_with_partner" : "_without_partner";
    std::vector<OutcomeDistribution> experts;
    for (const auto& [name, dist] : cfg.sim_experts) {
      if (with_partner || name != cfg.sim_partner) experts.push_back(dist);
    }
    if (experts.empty()) continue;
    for (const auto& [name, rule] : {std::pair{"ace", SelectionRule::Ucb}, std::pair{"random", SelectionRule::Uniform}}) {
      if (!cfg.conditions.count(name)) continue;
      const std::string label = std::string(rule == SelectionRule::Ucb ? "ACE" : "R") + suffix;
      PairingResult r = run_simulated_pairing(base(experts, rule));
      r.spymaster = rule == SelectionRule::Ucb ? "ACE" : "R";
      rows.push_back(label);
      cells.put(label, "sim", writer.add(name + cond_suffix, std::move(r)).summary);
    }
    if (cfg.conditions.count("best_average")) {
      const std::string pick = with_partner ? best : best_without;
      if (pick.empty()) continue;
      const std::string label = "BA" + suffix;
      PairingResult r = run_simulated_pairing(base({cfg.sim_experts.at(pick)}, SelectionRule::Ucb));
      r.spymaster = "BA(" + pick + ")";
      rows.push_back(label);
      cells.put(label, "sim", writer.add("best_average" + cond_suffix, std::move(r)).summary);
    }
  }
  write_tables(tables, rows, cols, cells,
               "Rows are simulated experts and ensembles over them. Labels ending in * leave out the partner expert.\n");
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream* progress) {
  Writer writer(out_dir, cfg, progress);
  std::ofstream tables(out_dir / "tables.txt");
  if (!tables) throw ConfigError("cannot write into " + out_dir.string());
  if (cfg.mode == ExperimentConfig::Mode::Agents) {
    run_agent_experiment(cfg, writer, tables);
  } else {
    run_simulated_experiment(cfg, writer, tables);
  }
}

std::vector<LogSummary> rate_logs(std::istream& in, const ColtWeights& weights, const std::string& source) {
  struct Group {
    std::map<long long, std::map<long long, GameLog>> reps;  // rep -> game -> log
    int games = 0;
  };
  std::map<std::string, Group> groups;
  std::vector<std::string> order;
  std::map<std::string, long long> plain_games;  // ids without rep/game parts

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::string id;
    TurnOutcome outcome;
    try {
      const auto j = nlohmann::json::parse(line);
      id = j.at("game_id").get<std::string>();
      outcome = parse_outcome_label(j.at("outcome_code").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const InvalidInput& e) {
      throw ParseError(source, line_no, e.what());
    }

    std::string pairing = "all";
    long long rep = 0, game = 0;
    const auto parts = detail::split(id, '/');
    const auto r = parts.size() >= 3 ? detail::parse_int(parts[parts.size() - 2]) : std::nullopt;
    const auto g = parts.size() >= 3 ? detail::parse_int(parts.back()) : std::nullopt;
    if (r && g) {
      pairing = id.substr(0, id.size() - parts.back().size() - parts[parts.size() - 2].size() - 2);
      rep = *r;
      game = *g;
    } else {
      const auto [it, fresh] = plain_games.emplace(id, static_cast<long long>(plain_games.size()));
      game = it->second;
    }
    if (!groups.count(pairing)) order.push_back(pairing);
    Group& grp = groups[pairing];
    auto& games = grp.reps[rep];
    if (!games.count(game)) ++grp.games;
    games[game].outcomes.push_back(outcome);
  }

  std::vector<LogSummary> out;
  for (const std::string& name : order) {
    const Group& grp = groups.at(name);
    PairingResult result;
    for (const auto& [rep, games] : grp.reps) {
      std::vector<GameLog> block;
      for (const auto& [g, log] : games) block.push_back(log);
      result.games_per_block = std::max(result.games_per_block, static_cast<int>(block.size()));
      result.repetitions.push_back(std::move(block));
    }
    LogSummary s;
    s.pairing = name;
    s.repetitions = static_cast<int>(result.repetitions.size());
    s.games = grp.games;
    s.summary = summarize(result, weights);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace codenames
