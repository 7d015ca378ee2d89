#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "codenames/embeddings.hpp"
#include "codenames/game.hpp"

namespace codenames {

// Unrevealed board words split by whether they belong to the active team.
struct SpymasterView {
  std::vector<std::string> good;
  std::vector<std::string> bad;  // opponent, bystander and assassin cards
};

SpymasterView spymaster_view(const GameState& state);

class Spymaster {
 public:
  virtual ~Spymaster() = default;
  virtual std::string name() const = 0;
  virtual Clue give_clue(const GameState& state) = 0;
  // Called once the turn driven by the last clue has been resolved.
  virtual void observe(TurnOutcome) {}
};

class Guesser {
 public:
  virtual ~Guesser() = default;
  virtual std::string name() const = 0;
  // Ordered guesses for this clue; play stops when the list runs out or the
  // turn ends.
  virtual std::vector<std::string> make_guesses(const GameState& state, const Clue& clue) = 0;
  virtual void observe(TurnOutcome) {}
};

// A clue candidate with the good words it points at. Every association is
// strictly closer than min_bad_distance.
struct CandidateClue {
  std::string word;
  std::vector<Neighbor> associated_good;
  double min_bad_distance = 0.0;
};

// Chooses the legal clue word associated with the most good words, where a
// good word counts only if it is closer to the clue than every bad word.
// Ties go to the smaller mean distance, then the smaller word.
Clue embedding_clue(const EmbeddingModel& model, const GameState& state);

// All scored candidates for the current view, in no particular order.
std::vector<CandidateClue> candidate_clues(const EmbeddingModel& model, const GameState& state);

// The clue.number nearest unrevealed words, or every unrevealed word in
// distance order when the number is zero. An unknown clue word yields the
// alphabetically first unrevealed word.
std::vector<std::string> embedding_guesses(const EmbeddingModel& model, const GameState& state, const Clue& clue);

class EmbeddingSpymaster : public Spymaster {
 public:
  explicit EmbeddingSpymaster(std::shared_ptr<const EmbeddingModel> model, std::string name = "");
  std::string name() const override { return name_; }
  Clue give_clue(const GameState& state) override;

 private:
  std::shared_ptr<const EmbeddingModel> model_;
  std::string name_;
};

class EmbeddingGuesser : public Guesser {
 public:
  explicit EmbeddingGuesser(std::shared_ptr<const EmbeddingModel> model, std::string name = "");
  std::string name() const override { return name_; }
  std::vector<std::string> make_guesses(const GameState& state, const Clue& clue) override;

 private:
  std::shared_ptr<const EmbeddingModel> model_;
  std::string name_;
};

// Plays one turn: the spymaster's clue, then the guesser's list in order.
// Both agents observe the outcome.
TurnOutcome play_turn(GameState& state, Spymaster& spymaster, Guesser& guesser);

// Agent codes bound to neighbor files, one per role. Models are loaded on
// first use and shared.
class AgentRegistry {
 public:
  static const std::vector<std::string>& standard_codes();  // w wg g5 g1 g2 g3 cn

  void bind(const std::string& code, const std::filesystem::path& spymaster_file,
            const std::filesystem::path& guesser_file);
  void bind(const std::string& code, const std::filesystem::path& file) { bind(code, file, file); }
  // Registers already-built models, bypassing the file system.
  void bind_models(const std::string& code, std::shared_ptr<const EmbeddingModel> spymaster_model,
                   std::shared_ptr<const EmbeddingModel> guesser_model);

  bool has(const std::string& code) const;
  std::vector<std::string> codes() const;

  std::shared_ptr<const EmbeddingModel> spymaster_model(const std::string& code) const;
  std::shared_ptr<const EmbeddingModel> guesser_model(const std::string& code) const;
  std::unique_ptr<Spymaster> make_spymaster(const std::string& code) const;
  std::unique_ptr<Guesser> make_guesser(const std::string& code) const;

 private:
  struct Binding {
    std::filesystem::path spymaster_file, guesser_file;
    std::shared_ptr<const EmbeddingModel> spymaster, guesser;
  };
  std::shared_ptr<const EmbeddingModel> resolve(const std::string& code, bool spymaster_role) const;

  mutable std::mutex mu_;
  mutable std::map<std::string, Binding> bindings_;
  mutable std::map<std::filesystem::path, std::shared_ptr<const EmbeddingModel>> cache_;
};

}  // namespace codenames
