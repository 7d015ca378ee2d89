#include <gtest/gtest.h>

#include <sstream>

#include "codenames/errors.hpp"
#include "codenames/game.hpp"
#include "support.hpp"

using namespace codenames;
using testing_support::word_list;

namespace {

// Board with a known layout: words a0..a8 first team, b0..b7 second team,
// c0..c6 bystanders, x the assassin.
GameState fixed_board(GameMode mode) {
  std::vector<Card> cards;
  for (int i = 0; i < 9; ++i) cards.push_back({"a" + std::to_string(i), CardCategory::TeamFirst, false});
  for (int i = 0; i < 8; ++i) cards.push_back({"b" + std::to_string(i), CardCategory::TeamSecond, false});
  for (int i = 0; i < 7; ++i) cards.push_back({"c" + std::to_string(i), CardCategory::Bystander, false});
  cards.push_back({"x", CardCategory::Assassin, false});
  return GameState(cards, mode);
}

GuessPolicy script(std::vector<std::string> words) {
  auto next = std::make_shared<std::size_t>(0);
  return [words = std::move(words), next](const GameState&, const Clue&) -> std::optional<std::string> {
    if (*next >= words.size()) return std::nullopt;
    return words[(*next)++];
  };
}

}  // namespace

TEST(Board, DealsNineEightSevenOne) {
  const auto words = word_list(60);
  const GameState s = new_board(words, 42, GameMode::Competitive);
  EXPECT_EQ(s.board().size(), 25u);
  EXPECT_EQ(s.unrevealed(CardCategory::TeamFirst), 9);
  EXPECT_EQ(s.unrevealed(CardCategory::TeamSecond), 8);
  EXPECT_EQ(s.unrevealed(CardCategory::Bystander), 7);
  EXPECT_EQ(s.unrevealed(CardCategory::Assassin), 1);
  EXPECT_EQ(s, new_board(words, 42, GameMode::Competitive));
  EXPECT_NE(s.board(), new_board(words, 43, GameMode::Competitive).board());
}

TEST(Board, RequiresTwentyFiveDistinctWords) {
  auto words = word_list(24);
  EXPECT_THROW(new_board(words, 1, GameMode::Solitaire), InvalidInput);
  words.push_back("WORD10000");  // case-folded duplicate
  EXPECT_THROW(new_board(words, 1, GameMode::Solitaire), InvalidInput);
  words.push_back("fresh");
  EXPECT_NO_THROW(new_board(words, 1, GameMode::Solitaire));
}

TEST(Board, RejectsBadLayouts) {
  std::vector<Card> cards = fixed_board(GameMode::Competitive).board();
  cards[0].category = CardCategory::Bystander;
  EXPECT_THROW(GameState(cards, GameMode::Competitive), InvalidInput);
  cards = fixed_board(GameMode::Competitive).board();
  cards[1].word = "A0";
  EXPECT_THROW(GameState(cards, GameMode::Competitive), InvalidInput);
  cards.pop_back();
  EXPECT_THROW(GameState(cards, GameMode::Competitive), InvalidInput);
}

TEST(Clues, LegalityRules) {
  const GameState s = fixed_board(GameMode::Competitive);
  EXPECT_TRUE(legal_clue(s, {"river", 2}));
  EXPECT_TRUE(legal_clue(s, {"river", 0}));
  EXPECT_TRUE(legal_clue(s, {"river", 9}));
  EXPECT_FALSE(legal_clue(s, {"river", 10}));
  EXPECT_FALSE(legal_clue(s, {"river", -1}));
  EXPECT_FALSE(legal_clue(s, {"", 1}));
  EXPECT_FALSE(legal_clue(s, {"a3", 1}));
  EXPECT_FALSE(legal_clue(s, {"B2", 1}));
}

TEST(Turns, CorrectGuessesThenBystander) {
  GameState s = fixed_board(GameMode::Competitive);
  const TurnOutcome o = resolve_turn(s, {"hint", 3}, script({"a0", "a1", "c0", "a2"}));
  EXPECT_EQ(o, (TurnOutcome{2, Adverse::Bystander}));
  EXPECT_EQ(s.active_team(), Team::Second);
  ASSERT_EQ(s.turn_log().size(), 1u);
  EXPECT_EQ(s.turn_log()[0].guesses.size(), 3u);
  EXPECT_FALSE(legal_clue(s, {"c1", 1}));
  GameState copy = s;
  EXPECT_TRUE(legal_clue(copy, {"c0", 1}));  // revealed words may be clues
}

TEST(Turns, GuessCapIsNumberPlusOne) {
  GameState s = fixed_board(GameMode::Competitive);
  const TurnOutcome o = resolve_turn(s, {"hint", 2}, script({"a0", "a1", "a2", "a3"}));
  EXPECT_EQ(o, (TurnOutcome{3, Adverse::None}));
  EXPECT_EQ(s.unrevealed(CardCategory::TeamFirst), 6);
}

TEST(Turns, ZeroClueAllowsUnlimitedGuesses) {
  GameState s = fixed_board(GameMode::Solitaire);
  const TurnOutcome o = resolve_turn(s, {"hint", 0}, script({"a0", "a1", "a2", "a3", "a4"}));
  EXPECT_EQ(o, (TurnOutcome{5, Adverse::None}));
}

TEST(Turns, StoppingBeforeFirstGuessIsAnError) {
  GameState s = fixed_board(GameMode::Competitive);
  EXPECT_THROW(resolve_turn(s, {"hint", 1}, script({})), InvalidInput);
  EXPECT_THROW(resolve_turn(s, {"a0", 1}, script({"a1"})), InvalidInput);
}

TEST(Terminal, AssassinLosesForActiveTeam) {
  GameState s = fixed_board(GameMode::Competitive);
  const TurnOutcome o = resolve_turn(s, {"hint", 2}, script({"a0", "x"}));
  EXPECT_EQ(o, (TurnOutcome{1, Adverse::Assassin}));
  EXPECT_EQ(s.status(), (GameStatus{GameStatus::Kind::Lost, Team::First}));
  EXPECT_THROW(resolve_turn(s, {"hint", 1}, script({"a1"})), InvalidInput);
}

TEST(Terminal, LastOwnCardWins) {
  GameState s = fixed_board(GameMode::Solitaire);
  const TurnOutcome o = resolve_turn(s, {"hint", 9},
                                     script({"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "x"}));
  EXPECT_EQ(o, (TurnOutcome{9, Adverse::None}));
  EXPECT_EQ(s.status(), (GameStatus{GameStatus::Kind::Won, Team::First}));
}

TEST(Terminal, SolitaireOpponentsLastCardLoses) {
  GameState s = fixed_board(GameMode::Solitaire);
  for (int i = 0; i < 8; ++i) resolve_turn(s, {"hint", 1}, script({"b" + std::to_string(i)}));
  EXPECT_EQ(s.status(), (GameStatus{GameStatus::Kind::Lost, Team::First}));
  EXPECT_EQ(s.active_team(), Team::First);
}

TEST(Terminal, CompetitiveOpponentsLastCardHandsThemTheWin) {
  GameState s = fixed_board(GameMode::Competitive);
  // First team reveals b0..b6 over several turns, second team passes on bystanders.
  for (int i = 0; i < 7; ++i) {
    resolve_turn(s, {"hint", 1}, script({"b" + std::to_string(i)}));
    resolve_turn(s, {"hint", 1}, script({"c" + std::to_string(i)}));
  }
  resolve_turn(s, {"hint", 1}, script({"b7"}));
  EXPECT_EQ(s.status(), (GameStatus{GameStatus::Kind::Won, Team::Second}));
}

TEST(Replay, ReproducesRandomGamesExactly) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GameMode mode = seed % 2 ? GameMode::Solitaire : GameMode::Competitive;
    const GameState played = testing_support::play_random_game(seed, mode);
    const GameState fresh = new_board(testing_support::word_list(40, "card"), seed, mode);
    EXPECT_EQ(replay(fresh, played.turn_log()), played) << seed;
  }
}

TEST(Replay, DetectsTamperedLogs) {
  const GameState played = testing_support::play_random_game(5, GameMode::Competitive);
  auto log = played.turn_log();
  ASSERT_FALSE(log.empty());
  log[0].outcome.team_flips += 1;
  const GameState fresh = new_board(testing_support::word_list(40, "card"), 5, GameMode::Competitive);
  EXPECT_THROW(replay(fresh, log), InvalidInput);
}

TEST(TurnLog, JsonLinesRoundTrip) {
  const GameState played = testing_support::play_random_game(9, GameMode::Competitive);
  std::stringstream ss;
  write_turn_log(ss, "g9", played.turn_log());
  const auto back = read_turn_log(ss);
  ASSERT_EQ(back.size(), played.turn_log().size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].game_id, "g9");
    EXPECT_EQ(back[i].turn_index, static_cast<int>(i));
    EXPECT_EQ(back[i].record, played.turn_log()[i]);
  }
}

TEST(TurnLog, MalformedLineReportsLineNumber) {
  std::stringstream ss("\n{\"game_id\": 1}\n");
  try {
    read_turn_log(ss, "log");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}
