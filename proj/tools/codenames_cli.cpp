#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "codenames/errors.hpp"
#include "codenames/experiment.hpp"
#include "codenames/harness.hpp"
#include "codenames/training.hpp"

using namespace codenames;

namespace {

VectorScheme parse_scheme(const std::string& s) {
  if (s == "structural") return VectorScheme::Structural;
  if (s == "sparse") return VectorScheme::Sparse;
  throw ConfigError("unknown vector scheme '" + s + "' (use structural or sparse)");
}

ColtWeights weights_or_shipped(const std::string& path) { return path.empty() ? shipped_weights() : load_weights(path); }

std::string fixed(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> out;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) out.push_back(lo + i * step);
  return out;
}

struct TrainArgs {
  std::string preset = "desk";
  int samples = 0;
  int games = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string dataset_out;
  std::string scheme = "structural";
  int threads = 0;
  int max_epochs = 0;
};

int train_colt(const TrainArgs& a) {
  TrainingConfig cfg = training_preset(a.preset);
  if (a.samples > 0) cfg.n_samples = a.samples;
  if (a.games > 0) cfg.games_per_matchup = a.games;
  if (a.max_epochs > 0) cfg.max_epochs = a.max_epochs;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.scheme = parse_scheme(a.scheme);
  cfg.validate();

  std::cerr << "simulating " << cfg.n_samples << " matchups x " << cfg.games_per_matchup << " games\n";
  const auto data = build_dataset(cfg);
  if (!a.dataset_out.empty()) {
    std::ofstream out(a.dataset_out);
    if (!out) throw ConfigError("cannot write " + a.dataset_out);
    write_dataset(out, data);
  }
  const auto n_hold = static_cast<std::size_t>(cfg.holdout_fraction * static_cast<double>(data.size()));
  const std::span<const TrainingSample> train(data.data(), data.size() - n_hold);
  const std::span<const TrainingSample> hold(data.data() + train.size(), n_hold);
  const TrainingReport report = train_weights_report(train, cfg);
  save_weights(a.out, report.weights);

  std::cout << "epochs " << report.epochs << ", train L1 " << fixed(report.final_loss, 4) << ", train R^2 "
            << fixed(evaluate_r2(report.weights, train)) << '\n';
  if (hold.size() >= 2) {
    std::cout << "holdout R^2 " << fixed(evaluate_r2(report.weights, hold)) << " (shipped weights "
              << fixed(evaluate_r2(shipped_weights(), hold)) << ")\n";
  }
  std::cout << "weights written to " << a.out << '\n';
  return 0;
}

int experiment(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
               std::optional<int> threads) {
  ExperimentConfig cfg = ExperimentConfig::load(config);
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;
  run_experiment(cfg, out, &std::cerr);
  std::cout << "results written to " << out << '\n';
  return 0;
}

struct SurfaceArgs {
  int vectors = 50;
  int games = 200;
  std::string out;
  std::uint64_t seed = 1;
  double width = 0.0;
  std::string scheme = "structural";
  std::string weights;
  int threads = 0;
};

int surface(const SurfaceArgs& a) {
  SurfaceConfig cfg;
  cfg.n_vectors = a.vectors;
  cfg.games_each = a.games;
  cfg.seed = a.seed;
  cfg.width = a.width;
  cfg.scheme = parse_scheme(a.scheme);
  cfg.weights = weights_or_shipped(a.weights);
  cfg.threads = a.threads;
  cfg.win_rates = range(0.05, 0.95, 0.05);
  cfg.win_times = range(1.0, 12.0, 1.0);
  const SurfaceResult s = colt_surface(cfg);
  std::ofstream out(a.out);
  if (!out) throw ConfigError("cannot write " + a.out);
  write_surface_csv(out, s);

  double residual = 0.0;
  int fitted = 0;
  for (const auto& sample : s.samples) {
    if (!sample.win_time) continue;
    ++fitted;
    residual = std::max(residual, std::abs((*s.surface)(sample.win_rate, *sample.win_time) - sample.colt));
  }
  std::cout << fitted << " of " << s.samples.size() << " vectors fitted, kernel width " << fixed(s.width, 4)
            << ", max residual " << residual << "\nsurface written to " << a.out << '\n';
  return 0;
}

int rate_cmd(const std::vector<std::string>& logs, const std::string& weights_path) {
  const ColtWeights w = weights_or_shipped(weights_path);
  std::printf("%-40s %6s %7s %9s %9s %9s\n", "pairing", "reps", "games", "colt", "win_rate", "win_time");
  for (const std::string& path : logs) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open log " + path);
    for (const LogSummary& s : rate_logs(in, w, path)) {
      const auto& m = s.summary.mean;
      std::printf("%-40s %6d %7d %9.4f %9.4f %9s\n", s.pairing.c_str(), s.repetitions, s.games, m.colt, m.win_rate,
                  m.win_time ? fixed(*m.win_time, 3).c_str() : "-");
    }
  }
  return 0;
}

struct FixtureArgs {
  int words = 1000;
  int dim = 16;
  int k = kDefaultNeighbors;
  std::uint64_t seed = 1;
  std::string name = "fixture";
  std::string vocab;
  std::string out;
};

int make_fixture(const FixtureArgs& a) {
  std::vector<std::string> words;
  if (!a.vocab.empty()) {
    std::ifstream in(a.vocab);
    if (!in) throw ConfigError("cannot open " + a.vocab);
    for (std::string w; in >> w;) words.push_back(w);
  } else {
    for (int i = 0; i < a.words; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "w%05d", i);
      words.push_back(buf);
    }
  }
  if (a.dim < 1) throw ConfigError("dimension must be positive");
  Rng rng(a.seed);
  std::map<std::string, std::vector<double>> vectors;
  for (const std::string& w : words) {
    std::vector<double> v(static_cast<std::size_t>(a.dim));
    for (double& x : v) x = rng.normal();
    vectors[w] = std::move(v);
  }
  save_model(a.out, build_model(a.name, vectors, a.k));
  std::cout << vectors.size() << " words written to " << a.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codenames team rating and adaptive ensemble toolkit"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* tc = app.add_subcommand("train-colt", "Simulate matchups and fit rating weights");
  tc->add_option("--preset", train.preset, "desk (3000 x 300) or full (18000 x 1000; alias paper)")
      ->check(CLI::IsMember({"desk", "full", "paper"}));
  tc->add_option("--samples", train.samples, "Number of matchups (overrides preset)");
  tc->add_option("--games-per-matchup", train.games, "Games simulated per matchup (overrides preset)");
  tc->add_option("--seed", train.seed, "Base seed");
  tc->add_option("--out", train.out, "Weights file to write")->required();
  tc->add_option("--dataset-out", train.dataset_out, "Also dump the generated dataset");
  tc->add_option("--scheme", train.scheme, "Random team generator")->check(CLI::IsMember({"structural", "sparse"}));
  tc->add_option("--threads", train.threads, "Worker threads (0 = all cores)");
  tc->add_option("--max-epochs", train.max_epochs, "Gradient descent epoch limit");

  std::string exp_config, exp_out;
  std::optional<std::uint64_t> exp_seed;
  std::optional<int> exp_threads;
  auto* ex = app.add_subcommand("experiment", "Run pairing experiments from a JSON config");
  ex->add_option("--config", exp_config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  ex->add_option("--out", exp_out, "Output directory")->required();
  ex->add_option("--seed", exp_seed, "Base seed (overrides the config)");
  ex->add_option("--threads", exp_threads, "Worker threads (overrides the config)");

  SurfaceArgs surf;
  auto* sf = app.add_subcommand("surface", "Fit rating as a function of solitaire win rate and win time");
  sf->add_option("--vectors", surf.vectors, "Random teams to sample");
  sf->add_option("--games", surf.games, "Solitaire games per team");
  sf->add_option("--out", surf.out, "CSV file to write")->required();
  sf->add_option("--seed", surf.seed, "Base seed");
  sf->add_option("--width", surf.width, "Kernel width on the unit-scaled plane (0 = automatic)");
  sf->add_option("--scheme", surf.scheme, "Random team generator")->check(CLI::IsMember({"structural", "sparse"}));
  sf->add_option("--weights", surf.weights, "Weights file (default: shipped)");
  sf->add_option("--threads", surf.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> rate_logs_paths;
  std::string rate_weights;
  std::uint64_t rate_seed = 0;
  auto* rt = app.add_subcommand("rate", "Recompute metrics from turn logs");
  rt->add_option("--log", rate_logs_paths, "Line-delimited JSON turn log(s)")->required()->check(CLI::ExistingFile);
  rt->add_option("--weights", rate_weights, "Weights file (default: shipped)");
  rt->add_option("--seed", rate_seed, "Accepted for uniformity; rating is deterministic");

  FixtureArgs fix;
  auto* mf = app.add_subcommand("make-fixture", "Write a synthetic embedding neighbor file");
  mf->add_option("--words", fix.words, "Vocabulary size when no --vocab is given");
  mf->add_option("--vocab", fix.vocab, "Whitespace-separated word list to embed")->check(CLI::ExistingFile);
  mf->add_option("--dim", fix.dim, "Vector dimension");
  mf->add_option("--k", fix.k, "Neighbors kept per word");
  mf->add_option("--seed", fix.seed, "Seed for the random vectors");
  mf->add_option("--name", fix.name, "Model name stored in the header");
  mf->add_option("--out", fix.out, "Neighbor file to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tc) return train_colt(train);
    if (*ex) return experiment(exp_config, exp_out, exp_seed, exp_threads);
    if (*sf) return surface(surf);
    if (*rt) return rate_cmd(rate_logs_paths, rate_weights);
    if (*mf) return make_fixture(fix);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
