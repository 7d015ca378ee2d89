#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace codenames {

inline constexpr int kDefaultNeighbors = 300;

// 1 - u.v / (|u| |v|), clamped to [0, 2]. Throws InvalidInput on a dimension
// mismatch or a zero vector.
double cosine_distance(std::span<const double> u, std::span<const double> v);

struct Neighbor {
  std::string word;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Immutable word-vector store with a precomputed nearest-neighbor list per
// word. Words are kept in sorted order.
class EmbeddingModel {
 public:
  // Validates vectors and neighbor lists; throws InvalidInput on violations.
  EmbeddingModel(std::string name, std::size_t dim, std::map<std::string, std::vector<double>> vectors,
                 std::map<std::string, std::vector<Neighbor>> neighbors);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  // Length of every neighbor list.
  std::size_t k() const { return k_; }
  const std::vector<std::string>& words() const { return words_; }

  bool contains(std::string_view word) const;
  std::optional<std::size_t> find(std::string_view word) const;
  const std::string& word(std::size_t i) const { return words_.at(i); }
  // Index-based access for hot loops; indices follow words().
  double distance(std::size_t i, std::size_t j) const;
  const std::vector<std::size_t>& neighbor_indices(std::size_t i) const { return neighbor_index_.at(i); }
  std::span<const double> vector(std::string_view word) const;
  const std::vector<Neighbor>& neighbors(std::string_view word) const;
  // Cosine distance via cached unit vectors.
  double distance(std::string_view a, std::string_view b) const;

 private:
  std::size_t index_of(std::string_view word) const;

  std::string name_;
  std::size_t dim_ = 0;
  std::size_t k_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> vectors_;  // row-major, size() x dim()
  std::vector<double> units_;    // the same rows scaled to unit length
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<std::vector<std::size_t>> neighbor_index_;
};

// Brute-force neighbor lists (self excluded, ties broken by word) with
// k = min(k, vocabulary size - 1).
EmbeddingModel build_model(std::string name, const std::map<std::string, std::vector<double>>& vectors,
                           int k = kDefaultNeighbors);

// Neighbor file:
//   #model <name> <dim> <vocab_size> <K>
//   V <word> <dim floats>
//   N <word> <neighbor:distance> x K
// Stored distances must match the vectors within 1e-6.
EmbeddingModel read_model(std::istream& in, const std::string& source = "<stream>");
EmbeddingModel load_model(const std::filesystem::path& path);
void write_model(std::ostream& out, const EmbeddingModel& model);
void save_model(const std::filesystem::path& path, const EmbeddingModel& model);

// The k candidates closest to clue_word, nearest first; equal distances are
// ordered by word. The result does not depend on candidate order.
std::vector<std::string> nearest_board_words(const EmbeddingModel& model, std::string_view clue_word,
                                             std::span<const std::string> candidates, std::size_t k);

}  // namespace codenames
