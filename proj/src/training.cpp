#include "codenames/training.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "codenames/errors.hpp"
#include "codenames/simulation.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace codenames {

void TrainingConfig::validate() const {
  if (n_samples < 1 || games_per_matchup < 1 || max_epochs < 1) {
    throw InvalidInput("training counts must be positive");
  }
  if (!(learning_rate > 0.0) || !(convergence_tol > 0.0)) {
    throw InvalidInput("learning rate and tolerance must be positive");
  }
  if (holdout_fraction < 0.0 || holdout_fraction >= 1.0) {
    throw InvalidInput("holdout fraction must lie in [0, 1)");
  }
}

TrainingConfig TrainingConfig::desk() { return TrainingConfig{}; }

TrainingConfig TrainingConfig::full() {
  TrainingConfig c;
  c.n_samples = 18000;
  c.games_per_matchup = 1000;
  return c;
}

TrainingConfig training_preset(std::string_view name) {
  if (name == "desk") return TrainingConfig::desk();
  if (name == "full" || name == "paper") return TrainingConfig::full();
  throw ConfigError("unknown training preset '" + std::string(name) + "'");
}

std::vector<TrainingSample> build_dataset(const TrainingConfig& cfg) {
  cfg.validate();
  std::vector<TrainingSample> data(static_cast<std::size_t>(cfg.n_samples));
  detail::parallel_for(data.size(), cfg.threads, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, {i}));
    const SimOutcomeModel x{sample_outcome_vector(rng, cfg.scheme)};
    const SimOutcomeModel y{sample_outcome_vector(rng, cfg.scheme)};
    TrainingSample& s = data[i];
    for (std::size_t k = 0; k < kNumOutcomes; ++k) s.diff[k] = x.dist.probs()[k] - y.dist.probs()[k];
    s.target = simulate_competitive(x, y, cfg.games_per_matchup, rng);
  });
  return data;
}

namespace {

double dot(std::span<const double, kNumOutcomes> w, const std::array<double, kNumOutcomes>& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < kNumOutcomes; ++k) s += w[k] * x[k];
  return s;
}

}  // namespace

double l1_loss(std::span<const double, kNumOutcomes> w, std::span<const TrainingSample> data) {
  if (data.empty()) throw InvalidInput("empty training data");
  double total = 0.0;
  for (const TrainingSample& s : data) total += std::abs(sigmoid(dot(w, s.diff)) - s.target);
  return total / static_cast<double>(data.size());
}

std::array<double, kNumOutcomes> l1_gradient(std::span<const double, kNumOutcomes> w,
                                             std::span<const TrainingSample> data) {
  if (data.empty()) throw InvalidInput("empty training data");
  std::array<double, kNumOutcomes> g{};
  for (const TrainingSample& s : data) {
    const double p = sigmoid(dot(w, s.diff));
    const double r = p - s.target;
    if (r == 0.0) continue;
    const double scale = (r > 0.0 ? 1.0 : -1.0) * p * (1.0 - p);
    for (std::size_t k = 0; k < kNumOutcomes; ++k) g[k] += scale * s.diff[k];
  }
  const double n = static_cast<double>(data.size());
  for (double& v : g) v /= n;
  return g;
}

TrainingReport train_weights_report(std::span<const TrainingSample> data, const TrainingConfig& cfg) {
  if (data.empty()) throw InvalidInput("cannot train on empty data");
  cfg.validate();

  std::array<double, kNumOutcomes> w{};
  double loss = l1_loss(w, data);
  double lr = cfg.learning_rate;
  int epoch = 0;
  while (epoch < cfg.max_epochs) {
    ++epoch;
    const auto g = l1_gradient(w, data);
    std::array<double, kNumOutcomes> trial;
    for (std::size_t k = 0; k < kNumOutcomes; ++k) trial[k] = w[k] - lr * g[k];
    const double trial_loss = l1_loss(trial, data);
    if (trial_loss > loss) {
      lr *= 0.5;
      if (lr < 1e-12) break;
      continue;
    }
    const double improvement = loss - trial_loss;
    w = trial;
    loss = trial_loss;
    if (improvement < cfg.convergence_tol) break;
  }

  TrainingReport report;
  report.weights.weights = w;
  report.weights.provenance = "retrained";
  report.final_loss = loss;
  report.epochs = epoch;
  return report;
}

ColtWeights train_weights(std::span<const TrainingSample> data, const TrainingConfig& cfg) {
  return train_weights_report(data, cfg).weights;
}

double evaluate_r2(const ColtWeights& w, std::span<const TrainingSample> data) {
  if (data.empty()) throw InvalidInput("cannot score empty data");
  double mean = 0.0;
  for (const TrainingSample& s : data) mean += s.target;
  mean /= static_cast<double>(data.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (const TrainingSample& s : data) {
    const double p = sigmoid(rate(w, std::span<const double, kNumOutcomes>(s.diff)));
    ss_res += (s.target - p) * (s.target - p);
    ss_tot += (s.target - mean) * (s.target - mean);
  }
  if (ss_tot == 0.0) throw InvalidInput("R^2 undefined: all targets identical");
  return 1.0 - ss_res / ss_tot;
}

void write_dataset(std::ostream& out, std::span<const TrainingSample> data) {
  for (const TrainingSample& s : data) {
    for (std::size_t k = 0; k < kNumOutcomes; ++k) {
      if (k) out << ' ';
      out << detail::format_double(s.diff[k]);
    }
    out << '\t' << detail::format_double(s.target) << '\n';
  }
}

std::vector<TrainingSample> read_dataset(std::istream& in, const std::string& source) {
  std::vector<TrainingSample> data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_ws(line);
    if (fields.size() != kNumOutcomes + 1) {
      throw ParseError(source, line_no, "expected 37 numbers, got " + std::to_string(fields.size()));
    }
    TrainingSample s;
    for (std::size_t k = 0; k <= kNumOutcomes; ++k) {
      const auto v = detail::parse_double(fields[k]);
      if (!v) throw ParseError(source, line_no, "bad number '" + fields[k] + "'");
      if (k < kNumOutcomes) {
        s.diff[k] = *v;
      } else {
        s.target = *v;
      }
    }
    data.push_back(s);
  }
  return data;
}

}  // namespace codenames
