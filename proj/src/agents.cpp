#include "codenames/agents.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <unordered_set>

#include "codenames/errors.hpp"
#include "text.hpp"

namespace codenames {

SpymasterView spymaster_view(const GameState& state) {
  SpymasterView view;
  const CardCategory mine = category_of(state.active_team());
  for (const Card& c : state.board()) {
    if (c.revealed) continue;
    (c.category == mine ? view.good : view.bad).push_back(c.word);
  }
  std::sort(view.good.begin(), view.good.end());
  std::sort(view.bad.begin(), view.bad.end());
  return view;
}

std::vector<CandidateClue> candidate_clues(const EmbeddingModel& model, const GameState& state) {
  const SpymasterView view = spymaster_view(state);
  if (view.good.empty()) return {};

  auto indices = [&](const std::vector<std::string>& words) {
    std::vector<std::size_t> out;
    out.reserve(words.size());
    for (const std::string& w : words) {
      const auto i = model.find(w);
      if (!i) throw OutOfVocabulary(w);
      out.push_back(*i);
    }
    return out;
  };
  const std::vector<std::size_t> good = indices(view.good);
  const std::vector<std::size_t> bad = indices(view.bad);

  std::unordered_set<std::string> blocked;  // unrevealed board words, case-folded
  for (const Card& c : state.board()) {
    if (!c.revealed) blocked.insert(detail::to_lower(c.word));
  }

  // Candidate index -> positions in `good` whose neighbor lists contain it.
  std::map<std::size_t, std::vector<std::size_t>> seeds;
  for (std::size_t gi = 0; gi < good.size(); ++gi) {
    for (std::size_t nb : model.neighbor_indices(good[gi])) seeds[nb].push_back(gi);
  }

  std::vector<CandidateClue> out;
  for (const auto& [cand_index, goods] : seeds) {
    const std::string& word = model.word(cand_index);
    if (blocked.count(detail::to_lower(word))) continue;
    CandidateClue cand{word, {}, std::numeric_limits<double>::infinity()};
    for (std::size_t b : bad) cand.min_bad_distance = std::min(cand.min_bad_distance, model.distance(cand_index, b));
    for (std::size_t gi : goods) {
      const double d = model.distance(cand_index, good[gi]);
      if (d < cand.min_bad_distance) cand.associated_good.push_back({view.good[gi], d});
    }
    if (!cand.associated_good.empty()) out.push_back(std::move(cand));
  }
  return out;
}

Clue embedding_clue(const EmbeddingModel& model, const GameState& state) {
  const std::vector<CandidateClue> cands = candidate_clues(model, state);
  const CandidateClue* best = nullptr;
  double best_mean = 0.0;
  for (const CandidateClue& c : cands) {
    double sum = 0.0;
    for (const Neighbor& a : c.associated_good) sum += a.distance;
    const double mean = sum / static_cast<double>(c.associated_good.size());
    if (!best) {
      best = &c;
      best_mean = mean;
      continue;
    }
    const std::size_t n = c.associated_good.size(), bn = best->associated_good.size();
    if (n > bn || (n == bn && (mean < best_mean || (mean == best_mean && c.word < best->word)))) {
      best = &c;
      best_mean = mean;
    }
  }
  if (best) return Clue{best->word, static_cast<int>(best->associated_good.size())};

  const SpymasterView view = spymaster_view(state);
  if (view.good.empty()) throw InvalidInput("no good words left to clue");
  for (const Neighbor& nb : model.neighbors(view.good.front())) {
    if (legal_clue(state, Clue{nb.word, 1})) return Clue{nb.word, 1};
  }
  throw InvalidInput("no legal clue word near '" + view.good.front() + "'");
}

std::vector<std::string> embedding_guesses(const EmbeddingModel& model, const GameState& state, const Clue& clue) {
  std::vector<std::string> unrevealed = state.unrevealed_words();
  if (unrevealed.empty()) return {};
  if (!model.contains(clue.word)) {
    std::clog << "warning: clue '" << clue.word << "' is not in vocabulary of " << model.name()
              << "; guessing alphabetically\n";
    return {*std::min_element(unrevealed.begin(), unrevealed.end())};
  }
  const std::size_t k = clue.number <= 0
                            ? unrevealed.size()
                            : std::min(unrevealed.size(), static_cast<std::size_t>(clue.number));
  return nearest_board_words(model, clue.word, unrevealed, k);
}

EmbeddingSpymaster::EmbeddingSpymaster(std::shared_ptr<const EmbeddingModel> model, std::string name)
    : model_(std::move(model)), name_(name.empty() ? model_->name() : std::move(name)) {}

Clue EmbeddingSpymaster::give_clue(const GameState& state) { return embedding_clue(*model_, state); }

EmbeddingGuesser::EmbeddingGuesser(std::shared_ptr<const EmbeddingModel> model, std::string name)
    : model_(std::move(model)), name_(name.empty() ? model_->name() : std::move(name)) {}

std::vector<std::string> EmbeddingGuesser::make_guesses(const GameState& state, const Clue& clue) {
  return embedding_guesses(*model_, state, clue);
}

TurnOutcome play_turn(GameState& state, Spymaster& spymaster, Guesser& guesser) {
  const Clue clue = spymaster.give_clue(state);
  const std::vector<std::string> guesses = guesser.make_guesses(state, clue);
  std::size_t next = 0;
  const TurnOutcome outcome =
      resolve_turn(state, clue, [&](const GameState&, const Clue&) -> std::optional<std::string> {
        if (next >= guesses.size()) return std::nullopt;
        return guesses[next++];
      });
  spymaster.observe(outcome);
  guesser.observe(outcome);
  return outcome;
}

const std::vector<std::string>& AgentRegistry::standard_codes() {
  static const std::vector<std::string> codes = {"w", "wg", "g5", "g1", "g2", "g3", "cn"};
  return codes;
}

void AgentRegistry::bind(const std::string& code, const std::filesystem::path& spymaster_file,
                         const std::filesystem::path& guesser_file) {
  std::lock_guard lock(mu_);
  bindings_[code] = Binding{spymaster_file, guesser_file, nullptr, nullptr};
}

void AgentRegistry::bind_models(const std::string& code, std::shared_ptr<const EmbeddingModel> spymaster_model,
                                std::shared_ptr<const EmbeddingModel> guesser_model) {
  if (!spymaster_model || !guesser_model) throw InvalidInput("null model bound to '" + code + "'");
  std::lock_guard lock(mu_);
  bindings_[code] = Binding{{}, {}, std::move(spymaster_model), std::move(guesser_model)};
}

bool AgentRegistry::has(const std::string& code) const {
  std::lock_guard lock(mu_);
  return bindings_.count(code) > 0;
}

std::vector<std::string> AgentRegistry::codes() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [code, b] : bindings_) out.push_back(code);
  return out;
}

std::shared_ptr<const EmbeddingModel> AgentRegistry::resolve(const std::string& code, bool spymaster_role) const {
  std::lock_guard lock(mu_);
  const auto it = bindings_.find(code);
  if (it == bindings_.end()) throw ConfigError("no embedding bound to agent code '" + code + "'");
  Binding& b = it->second;
  auto& slot = spymaster_role ? b.spymaster : b.guesser;
  if (!slot) {
    const auto& path = spymaster_role ? b.spymaster_file : b.guesser_file;
    auto& cached = cache_[path];
    if (!cached) cached = std::make_shared<const EmbeddingModel>(load_model(path));
    slot = cached;
  }
  return slot;
}

std::shared_ptr<const EmbeddingModel> AgentRegistry::spymaster_model(const std::string& code) const {
  return resolve(code, true);
}

std::shared_ptr<const EmbeddingModel> AgentRegistry::guesser_model(const std::string& code) const {
  return resolve(code, false);
}

std::unique_ptr<Spymaster> AgentRegistry::make_spymaster(const std::string& code) const {
  return std::make_unique<EmbeddingSpymaster>(spymaster_model(code), code);
}

std::unique_ptr<Guesser> AgentRegistry::make_guesser(const std::string& code) const {
  return std::make_unique<EmbeddingGuesser>(guesser_model(code), code);
}

}  // namespace codenames
