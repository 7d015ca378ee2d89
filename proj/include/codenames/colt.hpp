#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "codenames/outcome.hpp"

namespace codenames {

// Learned weights of the linear team rating, one per outcome in canonical
// order, plus a provenance tag naming where they came from.
struct ColtWeights {
  std::array<double, kNumOutcomes> weights{};
  std::string provenance = "retrained";

  double operator[](int index) const { return weights.at(static_cast<std::size_t>(index)); }
};

inline constexpr const char* kShippedProvenance = "shipped";

double sigmoid(double z);

// W . x. Accepts signed (difference) vectors as well as distributions.
double rate(const ColtWeights& w, std::span<const double, kNumOutcomes> x);
double rate(const ColtWeights& w, const OutcomeDistribution& x);

// Predicted probability that the team with outcome distribution x beats the
// team with distribution y in a competitive game.
double win_probability(const ColtWeights& w, const OutcomeDistribution& x,
                       const OutcomeDistribution& y);

// Weights file: header "#colt-weights<TAB><provenance>", then 36 lines of
// "label<TAB>weight" in canonical order.
ColtWeights read_weights(std::istream& in, const std::string& source = "<stream>");
ColtWeights load_weights(const std::filesystem::path& path);
void write_weights(std::ostream& out, const ColtWeights& w);
void save_weights(const std::filesystem::path& path, const ColtWeights& w);

// Location of the weights file installed with the toolkit.
std::filesystem::path default_weights_path();
ColtWeights shipped_weights();

}  // namespace codenames
