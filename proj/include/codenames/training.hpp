#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "codenames/colt.hpp"
#include "codenames/simulation.hpp"

namespace codenames {

// One supervised example: rating difference input and observed win rate.
struct TrainingSample {
  std::array<double, kNumOutcomes> diff{};  // X - Y
  double target = 0.5;                      // estimated P(X beats Y)
};

struct TrainingConfig {
  int n_samples = 3000;
  int games_per_matchup = 300;
  double learning_rate = 0.5;
  int max_epochs = 20000;
  double convergence_tol = 1e-10;
  std::uint64_t seed = 1;
  double holdout_fraction = 0.1;  // trailing share of samples held out
  int threads = 0;                // 0 = hardware concurrency
  VectorScheme scheme = VectorScheme::Structural;

  void validate() const;

  static TrainingConfig desk();
  // 18000 matchups x 1000 games each.
  static TrainingConfig full();
};

TrainingConfig training_preset(std::string_view name);

// Sample i draws its two teams and its games from a stream keyed by
// (seed, i), so the dataset does not depend on thread count.
std::vector<TrainingSample> build_dataset(const TrainingConfig& cfg);

// Mean absolute error of sigmoid(W . diff) against targets.
double l1_loss(std::span<const double, kNumOutcomes> w, std::span<const TrainingSample> data);

// Subgradient of l1_loss; the sign term is taken as 0 at exact ties.
std::array<double, kNumOutcomes> l1_gradient(std::span<const double, kNumOutcomes> w,
                                             std::span<const TrainingSample> data);

struct TrainingReport {
  ColtWeights weights;
  double final_loss = 0.0;
  int epochs = 0;
};

// Full-batch gradient descent from zero weights. A step that raises the loss
// is rejected and the learning rate halved.
TrainingReport train_weights_report(std::span<const TrainingSample> data, const TrainingConfig& cfg);
ColtWeights train_weights(std::span<const TrainingSample> data, const TrainingConfig& cfg);

// 1 - SS_res / SS_tot of sigmoid(W . diff) against targets.
double evaluate_r2(const ColtWeights& w, std::span<const TrainingSample> data);

// Dataset dump: 36 signed floats, a tab, then the target; one sample per line.
void write_dataset(std::ostream& out, std::span<const TrainingSample> data);
std::vector<TrainingSample> read_dataset(std::istream& in, const std::string& source = "<stream>");

}  // namespace codenames
