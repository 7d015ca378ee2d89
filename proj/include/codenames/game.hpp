#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codenames/outcome.hpp"

namespace codenames {

inline constexpr int kBoardSize = 25;

enum class CardCategory : std::uint8_t { TeamFirst, TeamSecond, Bystander, Assassin };

// Cards of each category on a fresh board.
inline constexpr std::array<int, 4> kCategoryCounts = {9, 8, 7, 1};

enum class Team : std::uint8_t { First, Second };
enum class GameMode : std::uint8_t { Competitive, Solitaire };

Team other(Team t);
CardCategory category_of(Team t);
const char* to_string(CardCategory c);
const char* to_string(Team t);
CardCategory parse_category(std::string_view s);

struct Card {
  std::string word;
  CardCategory category = CardCategory::Bystander;
  bool revealed = false;

  friend bool operator==(const Card&, const Card&) = default;
};

struct Clue {
  std::string word;
  int number = 1;

  friend bool operator==(const Clue&, const Clue&) = default;
};

struct Guess {
  std::string word;
  CardCategory category = CardCategory::Bystander;

  friend bool operator==(const Guess&, const Guess&) = default;
};

struct TurnRecord {
  Team team = Team::First;
  Clue clue;
  std::vector<Guess> guesses;
  TurnOutcome outcome;

  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

struct GameStatus {
  enum class Kind : std::uint8_t { Ongoing, Won, Lost };
  Kind kind = Kind::Ongoing;
  Team team = Team::First;  // meaningful for Won and Lost

  bool ongoing() const { return kind == Kind::Ongoing; }
  friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

class GameState {
 public:
  GameState(std::vector<Card> board, GameMode mode);

  const std::vector<Card>& board() const { return board_; }
  Team active_team() const { return active_; }
  GameMode mode() const { return mode_; }
  const GameStatus& status() const { return status_; }
  const std::vector<TurnRecord>& turn_log() const { return log_; }

  // Index of a board word (case-folded match), or nullopt.
  std::optional<std::size_t> find(std::string_view word) const;
  int unrevealed(CardCategory c) const;
  int revealed(CardCategory c) const;
  std::vector<std::string> unrevealed_words() const;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  friend struct GameMutator;

  std::vector<Card> board_;
  Team active_ = Team::First;
  GameMode mode_ = GameMode::Competitive;
  GameStatus status_;
  std::vector<TurnRecord> log_;
};

// Picks 25 distinct words (case-folded) and deals categories 9/8/7/1
// uniformly at random. Deterministic for a fixed seed.
GameState new_board(std::span<const std::string> words, std::uint64_t seed, GameMode mode);

bool legal_clue(const GameState& state, const Clue& clue);

struct GuessResult {
  CardCategory category;
  bool turn_ended;
};

// Reveals one card for the active team and resolves terminal conditions.
// Does not record a turn; use resolve_turn for complete turns.
GuessResult apply_guess(GameState& state, std::string_view word);

// Supplies the next guess for the current turn, or nullopt to stop.
using GuessPolicy = std::function<std::optional<std::string>(const GameState&, const Clue&)>;

// Plays one full turn for the active team and appends it to the turn log.
TurnOutcome resolve_turn(GameState& state, const Clue& clue, const GuessPolicy& guesser);

// Re-applies a turn log to a fresh board and checks every revealed category
// and outcome against the log. Throws InvalidInput on divergence.
GameState replay(const GameState& initial, std::span<const TurnRecord> log);

// Line-delimited JSON, one record per turn.
void write_turn_log(std::ostream& out, std::string_view game_id, std::span<const TurnRecord> log);

struct LoggedTurn {
  std::string game_id;
  int turn_index = 0;
  TurnRecord record;
};

std::vector<LoggedTurn> read_turn_log(std::istream& in, const std::string& source = "<stream>");

}  // namespace codenames
