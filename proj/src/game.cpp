#include "codenames/game.hpp"

#include <istream>
#include <ostream>
#include <unordered_set>

#include "codenames/errors.hpp"
#include "codenames/rng.hpp"
#include "json.hpp"
#include "text.hpp"

namespace codenames {

Team other(Team t) { return t == Team::First ? Team::Second : Team::First; }

CardCategory category_of(Team t) {
  return t == Team::First ? CardCategory::TeamFirst : CardCategory::TeamSecond;
}

const char* to_string(CardCategory c) {
  switch (c) {
    case CardCategory::TeamFirst: return "team_first";
    case CardCategory::TeamSecond: return "team_second";
    case CardCategory::Bystander: return "bystander";
    case CardCategory::Assassin: return "assassin";
  }
  return "?";
}

const char* to_string(Team t) { return t == Team::First ? "first" : "second"; }

CardCategory parse_category(std::string_view s) {
  if (s == "team_first") return CardCategory::TeamFirst;
  if (s == "team_second") return CardCategory::TeamSecond;
  if (s == "bystander") return CardCategory::Bystander;
  if (s == "assassin") return CardCategory::Assassin;
  throw InvalidInput("unknown card category '" + std::string(s) + "'");
}

namespace {

Team parse_team(std::string_view s) {
  if (s == "first") return Team::First;
  if (s == "second") return Team::Second;
  throw InvalidInput("unknown team '" + std::string(s) + "'");
}

}  // namespace

// Write access to GameState internals for the rule functions in this file.
struct GameMutator {
  static std::vector<Card>& board(GameState& s) { return s.board_; }
  static void set_status(GameState& s, GameStatus st) { s.status_ = st; }
  static void set_active(GameState& s, Team t) { s.active_ = t; }
  static void append(GameState& s, TurnRecord r) { s.log_.push_back(std::move(r)); }
};

GameState::GameState(std::vector<Card> board, GameMode mode) : board_(std::move(board)), mode_(mode) {
  if (board_.size() != kBoardSize) throw InvalidInput("board must have exactly 25 cards");
  std::array<int, 4> seen{};
  std::unordered_set<std::string> words;
  for (const Card& c : board_) {
    if (!words.insert(detail::to_lower(c.word)).second) {
      throw InvalidInput("duplicate board word '" + c.word + "'");
    }
    ++seen[static_cast<std::size_t>(c.category)];
  }
  if (seen != kCategoryCounts) throw InvalidInput("board must hold 9/8/7/1 cards by category");
  // Boards are dealt fresh; a pre-revealed board could already be terminal.
  for (Card& c : board_) c.revealed = false;
}

std::optional<std::size_t> GameState::find(std::string_view word) const {
  const std::string key = detail::to_lower(word);
  for (std::size_t i = 0; i < board_.size(); ++i) {
    if (detail::to_lower(board_[i].word) == key) return i;
  }
  return std::nullopt;
}

int GameState::unrevealed(CardCategory c) const {
  int n = 0;
  for (const Card& card : board_) n += (card.category == c && !card.revealed);
  return n;
}

int GameState::revealed(CardCategory c) const {
  return kCategoryCounts[static_cast<std::size_t>(c)] - unrevealed(c);
}

std::vector<std::string> GameState::unrevealed_words() const {
  std::vector<std::string> out;
  for (const Card& c : board_) {
    if (!c.revealed) out.push_back(c.word);
  }
  return out;
}

GameState new_board(std::span<const std::string> words, std::uint64_t seed, GameMode mode) {
  std::vector<std::string> distinct;
  std::unordered_set<std::string> seen;
  for (const std::string& w : words) {
    if (w.empty()) continue;
    if (seen.insert(detail::to_lower(w)).second) distinct.push_back(w);
  }
  if (distinct.size() < kBoardSize) {
    throw InvalidInput("need at least 25 distinct words, got " + std::to_string(distinct.size()));
  }

  Rng rng(seed);
  for (std::size_t i = 0; i < kBoardSize; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(distinct.size() - i));
    std::swap(distinct[i], distinct[j]);
  }

  std::vector<CardCategory> categories;
  for (std::size_t c = 0; c < kCategoryCounts.size(); ++c) {
    categories.insert(categories.end(), static_cast<std::size_t>(kCategoryCounts[c]),
                      static_cast<CardCategory>(c));
  }
  rng.shuffle(categories);

  std::vector<Card> board;
  board.reserve(kBoardSize);
  for (std::size_t i = 0; i < kBoardSize; ++i) board.push_back({distinct[i], categories[i], false});
  return GameState(std::move(board), mode);
}

bool legal_clue(const GameState& state, const Clue& clue) {
  if (clue.word.empty()) return false;
  const int own = state.unrevealed(category_of(state.active_team()));
  if (clue.number < 0 || clue.number > own) return false;
  const std::string key = detail::to_lower(clue.word);
  for (const Card& c : state.board()) {
    if (!c.revealed && detail::to_lower(c.word) == key) return false;
  }
  return true;
}

GuessResult apply_guess(GameState& state, std::string_view word) {
  if (!state.status().ongoing()) throw InvalidInput("game is already over");
  const auto idx = state.find(word);
  if (!idx) throw InvalidInput("'" + std::string(word) + "' is not on the board");
  Card& card = GameMutator::board(state)[*idx];
  if (card.revealed) throw InvalidInput("'" + card.word + "' is already revealed");
  card.revealed = true;

  const Team team = state.active_team();
  const CardCategory own = category_of(team);
  const CardCategory theirs = category_of(other(team));
  if (card.category == CardCategory::Assassin) {
    GameMutator::set_status(state, {GameStatus::Kind::Lost, team});
  } else if (card.category == own) {
    if (state.unrevealed(own) == 0) GameMutator::set_status(state, {GameStatus::Kind::Won, team});
  } else if (card.category == theirs && state.unrevealed(theirs) == 0) {
    // Revealing the other side's last card hands them the game; in solitaire
    // there is no other side to win, so it is recorded as our loss.
    if (state.mode() == GameMode::Competitive) {
      GameMutator::set_status(state, {GameStatus::Kind::Won, other(team)});
    } else {
      GameMutator::set_status(state, {GameStatus::Kind::Lost, team});
    }
  }
  return {card.category, card.category != own};
}

namespace {

Adverse adverse_for(CardCategory revealed) {
  switch (revealed) {
    case CardCategory::Bystander: return Adverse::Bystander;
    case CardCategory::Assassin: return Adverse::Assassin;
    default: return Adverse::Opponent;
  }
}

}  // namespace

TurnOutcome resolve_turn(GameState& state, const Clue& clue, const GuessPolicy& guesser) {
  if (!state.status().ongoing()) throw InvalidInput("game is already over");
  if (!legal_clue(state, clue)) throw InvalidInput("illegal clue '" + clue.word + "'");

  TurnRecord record{state.active_team(), clue, {}, {}};
  int correct = 0;
  Adverse adverse = Adverse::None;
  // n = 0 places no cap on correct guesses.
  const int cap = clue.number == 0 ? kBoardSize : clue.number + 1;
  while (correct < cap) {
    std::optional<std::string> next = guesser(state, clue);
    if (!next) {
      if (record.guesses.empty()) throw InvalidInput("at least one guess is required per turn");
      break;
    }
    const GuessResult r = apply_guess(state, *next);
    record.guesses.push_back({state.board()[*state.find(*next)].word, r.category});
    if (r.turn_ended) {
      adverse = adverse_for(r.category);
      break;
    }
    ++correct;
    if (!state.status().ongoing()) break;
  }

  record.outcome = {correct, adverse};
  const TurnOutcome outcome = record.outcome;
  GameMutator::append(state, std::move(record));
  if (state.mode() == GameMode::Competitive && state.status().ongoing()) {
    GameMutator::set_active(state, other(state.active_team()));
  }
  return outcome;
}

GameState replay(const GameState& initial, std::span<const TurnRecord> log) {
  GameState state = initial;
  for (std::size_t t = 0; t < log.size(); ++t) {
    const TurnRecord& rec = log[t];
    if (rec.team != state.active_team()) {
      throw InvalidInput("turn " + std::to_string(t) + " was played by the wrong team");
    }
    std::size_t next = 0;
    resolve_turn(state, rec.clue, [&](const GameState&, const Clue&) -> std::optional<std::string> {
      if (next >= rec.guesses.size()) return std::nullopt;
      return rec.guesses[next++].word;
    });
    if (next != rec.guesses.size() || state.turn_log().back() != rec) {
      throw InvalidInput("turn " + std::to_string(t) + " diverges from the log on replay");
    }
  }
  return state;
}

void write_turn_log(std::ostream& out, std::string_view game_id, std::span<const TurnRecord> log) {
  for (std::size_t i = 0; i < log.size(); ++i) {
    const TurnRecord& r = log[i];
    nlohmann::json guesses = nlohmann::json::array();
    for (const Guess& g : r.guesses) guesses.push_back({{"word", g.word}, {"category", to_string(g.category)}});
    nlohmann::json rec = {{"game_id", game_id},
                          {"turn_index", i},
                          {"team", to_string(r.team)},
                          {"clue_word", r.clue.word},
                          {"clue_number", r.clue.number},
                          {"guesses", guesses},
                          {"outcome_code", outcome_label(r.outcome)}};
    out << rec.dump() << '\n';
  }
}

std::vector<LoggedTurn> read_turn_log(std::istream& in, const std::string& source) {
  std::vector<LoggedTurn> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      LoggedTurn t;
      t.game_id = j.at("game_id").get<std::string>();
      t.turn_index = j.at("turn_index").get<int>();
      t.record.team = parse_team(j.at("team").get<std::string>());
      t.record.clue = {j.at("clue_word").get<std::string>(), j.at("clue_number").get<int>()};
      for (const auto& g : j.at("guesses")) {
        t.record.guesses.push_back({g.at("word").get<std::string>(),
                                    parse_category(g.at("category").get<std::string>())});
      }
      t.record.outcome = parse_outcome_label(j.at("outcome_code").get<std::string>());
      out.push_back(std::move(t));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const InvalidInput& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

}  // namespace codenames
