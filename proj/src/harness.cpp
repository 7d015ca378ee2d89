#include "codenames/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "codenames/errors.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace codenames {

namespace {

// Stream tags so the two roles and the board never share a seed.
constexpr std::uint64_t kBoardStream = 0;
constexpr std::uint64_t kSpymasterStream = 1;
constexpr std::uint64_t kGuesserStream = 2;
constexpr std::uint64_t kSimStream = 3;

OutcomeCounts tally(std::span<const GameLog> games) {
  OutcomeCounts c;
  for (const GameLog& g : games) {
    for (const TurnOutcome& o : g.outcomes) c.add(o);
  }
  return c;
}

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

AgentSpec AgentSpec::fixed(std::string code) {
  AgentSpec s;
  s.kind = Kind::Static;
  s.code = std::move(code);
  return s;
}

AgentSpec AgentSpec::ace(EnsembleConfig cfg) {
  AgentSpec s;
  s.kind = Kind::Ensemble;
  cfg.rule = SelectionRule::Ucb;
  s.ensemble = std::move(cfg);
  return s;
}

AgentSpec AgentSpec::random(EnsembleConfig cfg) {
  AgentSpec s;
  s.kind = Kind::Ensemble;
  cfg.rule = SelectionRule::Uniform;
  s.ensemble = std::move(cfg);
  return s;
}

AgentSpec AgentSpec::best_average() {
  AgentSpec s;
  s.kind = Kind::BestAverage;
  return s;
}

std::string AgentSpec::label() const {
  switch (kind) {
    case Kind::Static: return code;
    case Kind::Ensemble: return ensemble.rule == SelectionRule::Ucb ? "ACE" : "R";
    case Kind::BestAverage: return "BA";
  }
  return code;
}

std::optional<std::string> matching_partner(std::string_view code) {
  if (code == "wg") return std::nullopt;
  return std::string(code);
}

void PairingConfig::validate() const {
  if (games_per_block < 1 || repetitions < 1) throw ConfigError("games per block and repetitions must be positive");
  if (spymaster.kind == AgentSpec::Kind::Ensemble && guesser.kind == AgentSpec::Kind::Ensemble) {
    throw ConfigError("only one side of a pairing may be adaptive");
  }
  for (const AgentSpec* s : {&spymaster, &guesser}) {
    if (s->kind == AgentSpec::Kind::BestAverage) {
      throw ConfigError("best-average agent must be resolved to a code before play");
    }
  }
}

bool GameLog::won() const {
  int flips = 0;
  for (const TurnOutcome& o : outcomes) flips += o.team_flips;
  return flips == kCategoryCounts[0];
}

MetricTriple compute_metrics(std::span<const GameLog> games, const ColtWeights& weights) {
  if (games.empty()) throw InvalidInput("no games to score");
  MetricTriple m;
  m.colt = rate(weights, counts_to_distribution(tally(games)));
  int wins = 0;
  long long rounds = 0;
  for (const GameLog& g : games) {
    if (g.won()) {
      ++wins;
      rounds += g.rounds();
    }
  }
  m.win_rate = static_cast<double>(wins) / static_cast<double>(games.size());
  if (wins > 0) m.win_time = static_cast<double>(rounds) / wins;
  return m;
}

double confidence_interval(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw InvalidInput("a confidence interval needs at least two samples");
  const double mu = mean(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - mu) * (x - mu);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

PairingSummary summarize(const PairingResult& result, const ColtWeights& weights) {
  if (result.repetitions.empty()) throw InvalidInput("pairing has no repetitions");
  std::vector<double> colt, win_rate, win_time;
  for (const auto& rep : result.repetitions) {
    const MetricTriple m = compute_metrics(rep, weights);
    colt.push_back(m.colt);
    win_rate.push_back(m.win_rate);
    if (m.win_time) win_time.push_back(*m.win_time);
  }
  PairingSummary s;
  s.repetitions = static_cast<int>(colt.size());
  s.mean.colt = mean(colt);
  s.mean.win_rate = mean(win_rate);
  if (!win_time.empty()) s.mean.win_time = mean(win_time);
  if (colt.size() >= 2) {
    s.colt_ci = confidence_interval(colt);
    s.win_rate_ci = confidence_interval(win_rate);
  }
  if (win_time.size() >= 2) s.win_time_ci = confidence_interval(win_time);
  return s;
}

double colt_excluding_prefix(const PairingResult& result, int t, const ColtWeights& weights) {
  if (t < 0 || t >= result.games_per_block) {
    throw InvalidInput("prefix length must lie in [0, games per block)");
  }
  if (result.repetitions.empty()) throw InvalidInput("pairing has no repetitions");
  double sum = 0.0;
  for (const auto& rep : result.repetitions) {
    const std::span<const GameLog> games(rep);
    sum += rate(weights, counts_to_distribution(tally(games.subspan(static_cast<std::size_t>(t)))));
  }
  return sum / static_cast<double>(result.repetitions.size());
}

std::vector<double> colt_time_series(const PairingResult& result, const ColtWeights& weights) {
  if (result.repetitions.empty()) throw InvalidInput("pairing has no repetitions");
  std::vector<double> series(static_cast<std::size_t>(result.games_per_block), 0.0);
  for (const auto& rep : result.repetitions) {
    for (std::size_t g = 0; g < series.size(); ++g) {
      series[g] += rate(weights, counts_to_distribution(tally(std::span<const GameLog>(&rep.at(g), 1))));
    }
  }
  for (double& v : series) v /= static_cast<double>(result.repetitions.size());
  return series;
}

PairingResult run_pairing(const PairingConfig& cfg, const AgentRegistry& registry) {
  cfg.validate();
  // Fail on unknown codes before any thread starts.
  for (const AgentSpec* s : {&cfg.spymaster, &cfg.guesser}) {
    const std::vector<std::string> codes =
        s->kind == AgentSpec::Kind::Static ? std::vector<std::string>{s->code} : s->ensemble.active_experts();
    for (const std::string& code : codes) {
      if (!registry.has(code)) throw ConfigError("unknown agent code '" + code + "'");
    }
  }

  PairingResult result;
  result.spymaster = cfg.spymaster.label();
  result.guesser = cfg.guesser.label();
  result.games_per_block = cfg.games_per_block;
  result.repetitions.resize(static_cast<std::size_t>(cfg.repetitions));

  detail::parallel_for(result.repetitions.size(), cfg.threads, [&](std::size_t rep) {
    std::unique_ptr<Spymaster> spymaster =
        cfg.spymaster.kind == AgentSpec::Kind::Static
            ? registry.make_spymaster(cfg.spymaster.code)
            : make_ace_spymaster(registry, cfg.spymaster.ensemble, cfg.weights,
                                 derive_seed(cfg.seed, {rep, kSpymasterStream}));
    std::unique_ptr<Guesser> guesser =
        cfg.guesser.kind == AgentSpec::Kind::Static
            ? registry.make_guesser(cfg.guesser.code)
            : make_ace_guesser(registry, cfg.guesser.ensemble, cfg.weights, derive_seed(cfg.seed, {rep, kGuesserStream}));

    auto& games = result.repetitions[rep];
    games.resize(static_cast<std::size_t>(cfg.games_per_block));
    for (std::size_t g = 0; g < games.size(); ++g) {
      GameState state =
          new_board(cfg.words, derive_seed(cfg.seed, {rep, g, kBoardStream}), GameMode::Solitaire);
      while (state.status().ongoing()) games[g].outcomes.push_back(play_turn(state, *spymaster, *guesser));
      if (cfg.keep_records) games[g].turns = state.turn_log();
    }
  });
  return result;
}

PairingResult run_simulated_pairing(const SimulatedPairingConfig& cfg) {
  if (cfg.experts.empty()) throw ConfigError("simulated pairing needs at least one expert");
  if (cfg.games_per_block < 1 || cfg.repetitions < 1) {
    throw ConfigError("games per block and repetitions must be positive");
  }
  PairingResult result;
  result.spymaster = cfg.experts.size() == 1 ? "sim" : (cfg.rule == SelectionRule::Ucb ? "ACE" : "R");
  result.guesser = "sim";
  result.games_per_block = cfg.games_per_block;
  result.repetitions.resize(static_cast<std::size_t>(cfg.repetitions));

  detail::parallel_for(result.repetitions.size(), cfg.threads, [&](std::size_t rep) {
    EnsembleState ensemble(cfg.experts.size(), cfg.weights, cfg.c, false, cfg.rule,
                           derive_seed(cfg.seed, {rep, kSpymasterStream}));
    Rng rng(derive_seed(cfg.seed, {rep, kSimStream}));
    auto& games = result.repetitions[rep];
    games.resize(static_cast<std::size_t>(cfg.games_per_block));
    for (GameLog& log : games) {
      AbstractGame game(true);
      while (!game.over()) {
        const std::size_t i = cfg.experts.size() == 1 ? 0 : ensemble.select_expert();
        const TurnOutcome o = game.draw(cfg.experts[i], rng);
        game.apply(o);
        ensemble.record_outcome(i, o);
        log.outcomes.push_back(o);
      }
    }
  });
  return result;
}

void ResultMatrix::set(const std::string& spymaster, const std::string& guesser, double v) {
  if (std::find(spymasters.begin(), spymasters.end(), spymaster) == spymasters.end()) spymasters.push_back(spymaster);
  if (std::find(guessers.begin(), guessers.end(), guesser) == guessers.end()) guessers.push_back(guesser);
  values[{spymaster, guesser}] = v;
}

std::optional<double> ResultMatrix::get(const std::string& spymaster, const std::string& guesser) const {
  const auto it = values.find({spymaster, guesser});
  if (it == values.end()) return std::nullopt;
  return it->second;
}

BestAverage best_average_baseline(const ResultMatrix& matrix, bool without_partner) {
  if (matrix.spymasters.empty() || matrix.guessers.empty()) throw InvalidInput("result matrix is empty");
  std::vector<std::string> missing;
  for (const auto& s : matrix.spymasters) {
    for (const auto& g : matrix.guessers) {
      if (!matrix.get(s, g)) missing.push_back(s + "/" + g);
    }
  }
  if (!missing.empty()) {
    std::string msg = "result matrix is missing pairs:";
    for (const auto& m : missing) msg += " " + m;
    throw InvalidInput(msg);
  }

  auto rank = [&](const std::vector<std::string>& agents, const std::vector<std::string>& mates, bool agent_is_row) {
    std::vector<std::pair<double, std::string>> means;
    for (const auto& a : agents) {
      const auto partner = matching_partner(a);
      double sum = 0.0;
      int n = 0;
      for (const auto& m : mates) {
        if (without_partner && partner && *partner == m) continue;
        sum += *(agent_is_row ? matrix.get(a, m) : matrix.get(m, a));
        ++n;
      }
      if (n > 0) means.emplace_back(sum / n, a);
    }
    if (means.empty()) throw InvalidInput("no agent has teammates left to average over");
    std::stable_sort(means.begin(), means.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<std::string> out;
    for (auto& [mean, a] : means) out.push_back(std::move(a));
    return out;
  };
  BestAverage ba;
  ba.spymaster_ranking = rank(matrix.spymasters, matrix.guessers, true);
  ba.guesser_ranking = rank(matrix.guessers, matrix.spymasters, false);
  ba.spymaster = ba.spymaster_ranking.front();
  ba.guesser = ba.guesser_ranking.front();
  return ba;
}

namespace {

std::optional<std::string> first_non_partner(const std::vector<std::string>& ranking, std::string_view mate) {
  const auto partner = matching_partner(mate);
  for (const auto& a : ranking) {
    if (!partner || a != *partner) return a;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> BestAverage::spymaster_for(std::string_view guesser) const {
  return first_non_partner(spymaster_ranking, guesser);
}

std::optional<std::string> BestAverage::guesser_for(std::string_view spymaster) const {
  return first_non_partner(guesser_ranking, spymaster);
}

void SurfaceConfig::validate() const {
  if (n_vectors < 10) throw InvalidInput("surface needs at least 10 vectors");
  if (games_each < 1) throw InvalidInput("games per vector must be positive");
  if (win_rates.empty() || win_times.empty()) throw InvalidInput("surface grid is empty");
  if (!(width >= 0.0) || !(ridge >= 0.0)) throw InvalidInput("bad kernel width or ridge");
}

namespace {

// Mean distance to the nearest other point after scaling both axes to [0, 1].
double mean_nearest_spacing(const std::vector<std::array<double, 2>>& pts) {
  std::array<double, 2> lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  const double sx = hi[0] > lo[0] ? hi[0] - lo[0] : 1.0;
  const double sy = hi[1] > lo[1] ? hi[1] - lo[1] : 1.0;
  double total = 0.0;
  int counted = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const double dx = (pts[i][0] - pts[j][0]) / sx, dy = (pts[i][1] - pts[j][1]) / sy;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d > 0.0) best = std::min(best, d);
    }
    if (std::isfinite(best)) {
      total += best;
      ++counted;
    }
  }
  return counted ? total / counted : 0.1;
}

}  // namespace

SurfaceResult colt_surface(const SurfaceConfig& cfg) {
  cfg.validate();
  SurfaceResult out;
  out.samples.resize(static_cast<std::size_t>(cfg.n_vectors));
  detail::parallel_for(out.samples.size(), cfg.threads, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, {i}));
    const SimOutcomeModel team{sample_outcome_vector(rng, cfg.scheme)};
    const SolitaireStats stats = simulate_solitaire(team, cfg.games_each, rng);
    out.samples[i] = {stats.win_rate, stats.win_time, rate(cfg.weights, team.dist)};
  });

  std::vector<std::array<double, 2>> points;
  std::vector<double> values;
  for (const SurfaceSample& s : out.samples) {
    if (!s.win_time) continue;
    points.push_back({s.win_rate, *s.win_time});
    values.push_back(s.colt);
  }
  if (points.size() < 3) {
    throw InvalidInput("only " + std::to_string(points.size()) + " vectors won a game; need at least 3");
  }
  out.width = cfg.width > 0.0 ? cfg.width : 0.5 * mean_nearest_spacing(points);
  out.surface.emplace(points, values, out.width, cfg.ridge);
  out.win_rates = cfg.win_rates;
  out.win_times = cfg.win_times;
  out.grid.assign(cfg.win_times.size(), std::vector<double>(cfg.win_rates.size()));
  for (std::size_t r = 0; r < cfg.win_times.size(); ++r) {
    for (std::size_t c = 0; c < cfg.win_rates.size(); ++c) {
      out.grid[r][c] = (*out.surface)(cfg.win_rates[c], cfg.win_times[r]);
    }
  }
  return out;
}

namespace {

std::string opt_num(const std::optional<double>& v) { return v ? detail::format_double(*v) : ""; }

}  // namespace

void write_summary_csv_header(std::ostream& out) {
  out << "condition,spymaster,guesser,repetitions,games_per_block,colt,colt_ci,win_rate,win_rate_ci,win_time,"
         "win_time_ci\n";
}

void write_summary_csv_row(std::ostream& out, std::string_view condition, const PairingResult& result,
                           const PairingSummary& s) {
  out << condition << ',' << result.spymaster << ',' << result.guesser << ',' << s.repetitions << ','
      << result.games_per_block << ',' << detail::format_double(s.mean.colt) << ',' << opt_num(s.colt_ci) << ','
      << detail::format_double(s.mean.win_rate) << ',' << opt_num(s.win_rate_ci) << ',' << opt_num(s.mean.win_time)
      << ',' << opt_num(s.win_time_ci) << '\n';
}

void write_time_series_csv(std::ostream& out, std::string_view condition, const PairingResult& result,
                           const ColtWeights& weights) {
  const auto series = colt_time_series(result, weights);
  for (std::size_t g = 0; g < series.size(); ++g) {
    out << condition << ',' << result.spymaster << ',' << result.guesser << ',' << g << ','
        << detail::format_double(series[g]) << '\n';
  }
}

void write_pairing_logs(std::ostream& out, std::string_view condition, const PairingResult& result) {
  for (std::size_t r = 0; r < result.repetitions.size(); ++r) {
    for (std::size_t g = 0; g < result.repetitions[r].size(); ++g) {
      std::ostringstream id;
      id << condition << '/' << result.spymaster << '/' << result.guesser << '/' << r << '/' << g;
      write_turn_log(out, id.str(), result.repetitions[r][g].turns);
    }
  }
}

void write_surface_csv(std::ostream& out, const SurfaceResult& surface) {
  out << "kind,win_rate,win_time,colt\n";
  for (const SurfaceSample& s : surface.samples) {
    out << "sample," << detail::format_double(s.win_rate) << ',' << opt_num(s.win_time) << ','
        << detail::format_double(s.colt) << '\n';
  }
  for (std::size_t r = 0; r < surface.win_times.size(); ++r) {
    for (std::size_t c = 0; c < surface.win_rates.size(); ++c) {
      out << "grid," << detail::format_double(surface.win_rates[c]) << ','
          << detail::format_double(surface.win_times[r]) << ',' << detail::format_double(surface.grid[r][c]) << '\n';
    }
  }
}

void write_table(std::ostream& out, std::string_view title, const std::vector<std::string>& rows,
                 const std::vector<std::string>& columns,
                 const std::map<std::pair<std::string, std::string>, double>& cells, int precision) {
  std::size_t label_w = 4;
  for (const auto& r : rows) label_w = std::max(label_w, r.size());
  std::size_t cell_w = static_cast<std::size_t>(precision) + 4;
  for (const auto& c : columns) cell_w = std::max(cell_w, c.size());

  out << title << '\n';
  out << std::setw(static_cast<int>(label_w)) << std::left << "" << std::right;
  for (const auto& c : columns) out << "  " << std::setw(static_cast<int>(cell_w)) << c;
  out << '\n';
  for (const auto& r : rows) {
    out << std::setw(static_cast<int>(label_w)) << std::left << r << std::right;
    for (const auto& c : columns) {
      out << "  " << std::setw(static_cast<int>(cell_w));
      const auto it = cells.find({r, c});
      if (it == cells.end()) {
        out << "-";
      } else {
        std::ostringstream v;
        v << std::fixed << std::setprecision(precision) << it->second;
        out << v.str();
      }
    }
    out << '\n';
  }
  out << '\n';
}

}  // namespace codenames
