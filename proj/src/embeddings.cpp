#include "codenames/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "codenames/errors.hpp"
#include "text.hpp"

namespace codenames {

namespace {

constexpr double kStoredDistanceTolerance = 1e-6;

bool by_distance_then_word(const Neighbor& a, const Neighbor& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.word < b.word;
}

}  // namespace

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InvalidInput("cosine_distance: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw InvalidInput("cosine_distance: zero vector");
  const double d = 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(d, 0.0, 2.0);
}

EmbeddingModel::EmbeddingModel(std::string name, std::size_t dim,
                               std::map<std::string, std::vector<double>> vectors,
                               std::map<std::string, std::vector<Neighbor>> neighbors)
    : name_(std::move(name)), dim_(dim) {
  if (dim_ == 0) throw InvalidInput("embedding dimension must be positive");
  if (vectors.empty()) throw InvalidInput("embedding model has no words");
  words_.reserve(vectors.size());
  vectors_.reserve(vectors.size() * dim_);
  for (auto& [word, vec] : vectors) {
    if (word.empty()) throw InvalidInput("empty word in embedding model");
    if (vec.size() != dim_) {
      throw InvalidInput("vector for '" + word + "' has " + std::to_string(vec.size()) + " components, expected " +
                         std::to_string(dim_));
    }
    if (std::all_of(vec.begin(), vec.end(), [](double x) { return x == 0.0; })) {
      throw InvalidInput("zero vector for '" + word + "'");
    }
    if (!std::all_of(vec.begin(), vec.end(), [](double x) { return std::isfinite(x); })) {
      throw InvalidInput("non-finite vector component for '" + word + "'");
    }
    index_.emplace(word, words_.size());
    words_.push_back(word);
    vectors_.insert(vectors_.end(), vec.begin(), vec.end());
  }

  units_.resize(vectors_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const double* v = vectors_.data() + i * dim_;
    double norm = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) norm += v[d] * v[d];
    norm = std::sqrt(norm);
    for (std::size_t d = 0; d < dim_; ++d) units_[i * dim_ + d] = v[d] / norm;
  }

  neighbors_.resize(words_.size());
  neighbor_index_.resize(words_.size());
  bool first = true;
  for (auto& [word, list] : neighbors) {
    const auto it = index_.find(word);
    if (it == index_.end()) throw InvalidInput("neighbor list for unknown word '" + word + "'");
    if (first) {
      k_ = list.size();
      first = false;
    } else if (list.size() != k_) {
      throw InvalidInput("neighbor list for '" + word + "' has length " + std::to_string(list.size()) +
                         ", expected " + std::to_string(k_));
    }
    for (std::size_t j = 0; j < list.size(); ++j) {
      const Neighbor& nb = list[j];
      if (!index_.count(nb.word)) throw InvalidInput("neighbor '" + nb.word + "' of '" + word + "' not in vocabulary");
      if (nb.word == word) throw InvalidInput("'" + word + "' lists itself as a neighbor");
      if (!(nb.distance >= 0.0 && nb.distance <= 2.0)) {
        throw InvalidInput("distance out of range in neighbors of '" + word + "'");
      }
      if (j > 0 && nb.distance < list[j - 1].distance) {
        throw InvalidInput("neighbor distances of '" + word + "' are not sorted");
      }
      const double actual = cosine_distance(vector(word), vector(nb.word));
      if (std::abs(actual - nb.distance) > kStoredDistanceTolerance) {
        throw InvalidInput("stored distance " + detail::format_double(nb.distance) + " from '" + word + "' to '" +
                           nb.word + "' differs from computed " + detail::format_double(actual));
      }
    }
    auto& idx = neighbor_index_[it->second];
    for (const Neighbor& nb : list) idx.push_back(index_.at(nb.word));
    neighbors_[it->second] = std::move(list);
  }
  if (!neighbors.empty() && neighbors.size() != words_.size()) {
    throw InvalidInput("neighbor lists given for only some words");
  }
}

std::size_t EmbeddingModel::index_of(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) throw OutOfVocabulary(std::string(word));
  return it->second;
}

bool EmbeddingModel::contains(std::string_view word) const { return index_.count(std::string(word)) > 0; }

std::optional<std::size_t> EmbeddingModel::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const double> EmbeddingModel::vector(std::string_view word) const {
  return {vectors_.data() + index_of(word) * dim_, dim_};
}

const std::vector<Neighbor>& EmbeddingModel::neighbors(std::string_view word) const {
  return neighbors_[index_of(word)];
}

double EmbeddingModel::distance(std::string_view a, std::string_view b) const {
  return distance(index_of(a), index_of(b));
}

double EmbeddingModel::distance(std::size_t i, std::size_t j) const {
  const double* u = units_.data() + i * dim_;
  const double* v = units_.data() + j * dim_;
  double dot = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) dot += u[d] * v[d];
  return std::clamp(1.0 - dot, 0.0, 2.0);
}

EmbeddingModel build_model(std::string name, const std::map<std::string, std::vector<double>>& vectors, int k) {
  if (k < 1) throw InvalidInput("neighbor count must be positive");
  if (vectors.empty()) throw InvalidInput("embedding model has no words");
  const std::size_t keep = std::min(static_cast<std::size_t>(k), vectors.size() - 1);
  const std::size_t dim = vectors.begin()->second.size();

  std::map<std::string, std::vector<Neighbor>> neighbors;
  for (const auto& [word, vec] : vectors) {
    if (vec.size() != dim) throw InvalidInput("inconsistent vector dimensions at '" + word + "'");
    std::vector<Neighbor> all;
    all.reserve(vectors.size() - 1);
    for (const auto& [other, ovec] : vectors) {
      if (other != word) all.push_back({other, cosine_distance(vec, ovec)});
    }
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      by_distance_then_word);
    all.resize(keep);
    neighbors.emplace(word, std::move(all));
  }
  return EmbeddingModel(std::move(name), dim, vectors, std::move(neighbors));
}

EmbeddingModel read_model(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> ParseError { return ParseError(source, line_no, what); };

  std::string name;
  std::size_t dim = 0, vocab = 0, k = 0;
  bool have_header = false;
  std::map<std::string, std::vector<double>> vectors;
  std::map<std::string, std::vector<Neighbor>> neighbors;
  std::map<std::string, std::size_t> neighbor_line;

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    if (!have_header) {
      if (fields[0] != "#model" || fields.size() != 5) throw fail("expected '#model <name> <dim> <vocab> <K>'");
      const auto d = detail::parse_int(fields[2]);
      const auto v = detail::parse_int(fields[3]);
      const auto kk = detail::parse_int(fields[4]);
      if (!d || !v || !kk || *d < 1 || *v < 1 || *kk < 0) throw fail("bad header counts");
      name = fields[1];
      dim = static_cast<std::size_t>(*d);
      vocab = static_cast<std::size_t>(*v);
      k = static_cast<std::size_t>(*kk);
      have_header = true;
      continue;
    }
    const std::string& word = fields.size() > 1 ? fields[1] : fields[0];
    if (fields[0] == "V") {
      if (fields.size() != dim + 2) {
        throw fail("vector for '" + word + "' has " + std::to_string(fields.size() < 2 ? 0 : fields.size() - 2) +
                   " components, expected " + std::to_string(dim));
      }
      std::vector<double> vec(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        const auto x = detail::parse_double(fields[i + 2]);
        if (!x || !std::isfinite(*x)) throw fail("bad vector component '" + fields[i + 2] + "'");
        vec[i] = *x;
      }
      if (std::all_of(vec.begin(), vec.end(), [](double x) { return x == 0.0; })) {
        throw fail("zero vector for '" + word + "'");
      }
      if (!vectors.emplace(word, std::move(vec)).second) throw fail("duplicate vector for '" + word + "'");
    } else if (fields[0] == "N") {
      if (fields.size() != k + 2) {
        throw fail("neighbor list for '" + word + "' has " + std::to_string(fields.size() < 2 ? 0 : fields.size() - 2) +
                   " entries, expected " + std::to_string(k));
      }
      std::vector<Neighbor> list;
      list.reserve(k);
      for (std::size_t i = 0; i < k; ++i) {
        const std::string& item = fields[i + 2];
        const auto colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0) throw fail("expected neighbor:distance, got '" + item + "'");
        const auto dist = detail::parse_double(std::string_view(item).substr(colon + 1));
        if (!dist) throw fail("bad distance in '" + item + "'");
        if (!(*dist >= 0.0 && *dist <= 2.0)) throw fail("distance out of [0, 2] in '" + item + "'");
        if (!list.empty() && *dist < list.back().distance) throw fail("neighbor distances not sorted for '" + word + "'");
        list.push_back({item.substr(0, colon), *dist});
      }
      if (!neighbors.emplace(word, std::move(list)).second) throw fail("duplicate neighbor list for '" + word + "'");
      neighbor_line[word] = line_no;
    } else {
      throw fail("unknown record type '" + fields[0] + "'");
    }
  }
  if (!have_header) throw ParseError(source, line_no, "missing '#model' header");
  if (vectors.size() != vocab) {
    throw ParseError(source, line_no,
                     "header declares " + std::to_string(vocab) + " words, found " + std::to_string(vectors.size()));
  }

  // Cross-record checks, reported at the offending neighbor line.
  for (const auto& [word, list] : neighbors) {
    line_no = neighbor_line[word];
    if (!vectors.count(word)) throw fail("neighbor list for '" + word + "' has no vector");
    for (const Neighbor& nb : list) {
      const auto it = vectors.find(nb.word);
      if (it == vectors.end()) throw fail("neighbor '" + nb.word + "' of '" + word + "' not in vocabulary");
      if (nb.word == word) throw fail("'" + word + "' lists itself as a neighbor");
      const double actual = cosine_distance(vectors.at(word), it->second);
      if (std::abs(actual - nb.distance) > kStoredDistanceTolerance) {
        throw fail("stored distance from '" + word + "' to '" + nb.word + "' is " + detail::format_double(nb.distance) +
                   ", vectors give " + detail::format_double(actual));
      }
    }
  }
  for (const auto& [word, vec] : vectors) {
    if (!neighbors.count(word)) throw ParseError(source, line_no, "no neighbor list for '" + word + "'");
  }
  return EmbeddingModel(std::move(name), dim, std::move(vectors), std::move(neighbors));
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open embedding file " + path.string());
  return read_model(in, path.string());
}

void write_model(std::ostream& out, const EmbeddingModel& model) {
  out << "#model " << model.name() << ' ' << model.dim() << ' ' << model.size() << ' ' << model.k() << '\n';
  for (const std::string& word : model.words()) {
    out << "V " << word;
    for (double x : model.vector(word)) out << ' ' << detail::format_double(x);
    out << "\nN " << word;
    for (const Neighbor& nb : model.neighbors(word)) out << ' ' << nb.word << ':' << detail::format_double(nb.distance);
    out << '\n';
  }
}

void save_model(const std::filesystem::path& path, const EmbeddingModel& model) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write embedding file " + path.string());
  write_model(out, model);
}

std::vector<std::string> nearest_board_words(const EmbeddingModel& model, std::string_view clue_word,
                                             std::span<const std::string> candidates, std::size_t k) {
  if (k > candidates.size()) throw InvalidInput("asked for more words than there are candidates");
  if (!model.contains(clue_word)) throw OutOfVocabulary(std::string(clue_word));
  std::vector<Neighbor> ranked;
  ranked.reserve(candidates.size());
  std::set<std::string_view> seen;
  for (const std::string& c : candidates) {
    if (!seen.insert(c).second) continue;
    ranked.push_back({c, model.distance(clue_word, c)});
  }
  if (k > ranked.size()) throw InvalidInput("asked for more words than there are distinct candidates");
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(),
                    by_distance_then_word);
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::move(ranked[i].word));
  return out;
}

}  // namespace codenames
