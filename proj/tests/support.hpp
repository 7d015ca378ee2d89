#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "codenames/colt.hpp"
#include "codenames/embeddings.hpp"
#include "codenames/rng.hpp"

namespace testing_support {

// Published weight table, transcribed by hand column by column.
inline const std::vector<std::pair<std::string, double>>& published_weights() {
  static const std::vector<std::pair<std::string, double>> table = {
      {"0100", -4.695}, {"0010", -1.854}, {"0001", -9.740},
      {"1000", 1.706},  {"1100", -1.637}, {"1010", 0.007},  {"1001", -5.551},
      {"2000", 1.941},  {"2100", -0.404}, {"2010", 0.830},  {"2001", -4.567},
      {"3000", 2.274},  {"3100", 0.492},  {"3010", 1.468},  {"3001", -3.798},
      {"4000", 2.712},  {"4100", 1.109},  {"4010", 1.945},  {"4001", -2.892},
      {"5000", 3.022},  {"5100", 1.608},  {"5010", 1.960},  {"5001", -2.732},
      {"6000", 2.960},  {"6100", 1.792},  {"6010", 2.129},  {"6001", -2.573},
      {"7000", 2.950},  {"7100", 1.881},  {"7010", 2.110},  {"7001", -1.806},
      {"8000", 2.444},  {"8100", 1.120},  {"8010", 1.296},  {"8001", -1.136},
      {"9000", 1.528},
  };
  return table;
}

inline std::vector<std::string> word_list(int n, const std::string& prefix = "word") {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(10000 + i));
  return out;
}

// Gaussian random vectors for n words.
inline std::map<std::string, std::vector<double>> random_vectors(std::uint64_t seed, int n, int dim) {
  codenames::Rng rng(seed);
  std::map<std::string, std::vector<double>> out;
  for (const std::string& w : word_list(n)) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (double& x : v) x = rng.normal();
    out[w] = v;
  }
  return out;
}

inline std::shared_ptr<const codenames::EmbeddingModel> random_model(std::uint64_t seed, int n, int dim,
                                                                     int k = codenames::kDefaultNeighbors) {
  return std::make_shared<const codenames::EmbeddingModel>(
      codenames::build_model("synthetic" + std::to_string(seed), random_vectors(seed, n, dim), k));
}

}  // namespace testing_support

#include "codenames/game.hpp"

namespace testing_support {

// Plays a game with random legal clues and random guesses, stopping early
// at random. Returns the final state; its turn log drives replay checks.
inline codenames::GameState play_random_game(std::uint64_t seed, codenames::GameMode mode) {
  using namespace codenames;
  Rng rng(seed);
  const std::vector<std::string> words = word_list(40, "card");
  GameState state = new_board(words, seed, mode);
  int turn = 0;
  while (state.status().ongoing()) {
    const int own = state.unrevealed(category_of(state.active_team()));
    const Clue clue{"hint" + std::to_string(turn++), static_cast<int>(rng.below(static_cast<std::uint64_t>(own) + 1))};
    int made = 0;
    resolve_turn(state, clue, [&](const GameState& s, const Clue&) -> std::optional<std::string> {
      if (made > 0 && rng.uniform() < 0.3) return std::nullopt;
      const auto options = s.unrevealed_words();
      ++made;
      return options[static_cast<std::size_t>(rng.below(options.size()))];
    });
  }
  return state;
}

}  // namespace testing_support
