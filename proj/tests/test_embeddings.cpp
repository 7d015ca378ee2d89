#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "codenames/errors.hpp"
#include "codenames/embeddings.hpp"
#include "support.hpp"

using namespace codenames;

namespace {

std::vector<double> v2(double x, double y) { return {x, y}; }

// Four words on the unit circle at known angles.
EmbeddingModel compass(int k = 3) {
  return build_model("compass",
                     {{"east", v2(1, 0)}, {"north", v2(0, 1)}, {"west", v2(-1, 0)}, {"northeast", v2(1, 1)}}, k);
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_model(in, "model");
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Cosine, KnownAngles) {
  EXPECT_NEAR(cosine_distance(v2(1, 0), v2(2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(cosine_distance(v2(1, 0), v2(0, 3)), 1.0, 1e-15);
  EXPECT_NEAR(cosine_distance(v2(1, 0), v2(-1, 0)), 2.0, 1e-15);
  EXPECT_NEAR(cosine_distance(v2(1, 0), v2(1, 1)), 1.0 - std::sqrt(0.5), 1e-15);
}

TEST(Cosine, RejectsZeroAndMismatchedVectors) {
  EXPECT_THROW(cosine_distance(v2(0, 0), v2(1, 0)), InvalidInput);
  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(cosine_distance(v2(1, 0), three), InvalidInput);
}

TEST(Model, NeighborsSortedWithWordTieBreak) {
  const EmbeddingModel m = compass();
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(m.k(), 3u);
  const auto& nb = m.neighbors("east");
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0].word, "northeast");
  EXPECT_EQ(nb[1].word, "north");
  EXPECT_EQ(nb[2].word, "west");
  const auto& w = m.neighbors("west");
  EXPECT_EQ(w[0].word, "north");
}

TEST(Model, TiesBrokenAlphabetically) {
  const EmbeddingModel m = build_model("ties", {{"up", v2(0, 1)}, {"right", v2(1, 0)}, {"left", v2(-1, 0)}}, 2);
  EXPECT_EQ(m.neighbors("up")[0].word, "left");
  EXPECT_EQ(m.neighbors("up")[1].word, "right");
}

TEST(Model, NeighborCountCappedByVocabulary) {
  EXPECT_EQ(compass(300).k(), 3u);
  EXPECT_EQ(compass(1).k(), 1u);
  EXPECT_THROW(compass(0), InvalidInput);
}

TEST(Model, BruteForceNeighborOracle) {
  const auto vectors = testing_support::random_vectors(11, 80, 8);
  const EmbeddingModel m = build_model("rand", vectors, 10);
  for (const auto& [word, vec] : vectors) {
    std::vector<std::pair<double, std::string>> all;
    for (const auto& [other, ov] : vectors) {
      if (other != word) all.push_back({cosine_distance(vec, ov), other});
    }
    std::sort(all.begin(), all.end());
    const auto& nb = m.neighbors(word);
    ASSERT_EQ(nb.size(), 10u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      EXPECT_EQ(nb[i].word, all[i].second);
      EXPECT_NEAR(nb[i].distance, all[i].first, 1e-12);
      EXPECT_NEAR(m.distance(word, nb[i].word), all[i].first, 1e-12);
    }
  }
}

TEST(Model, UnknownWordsAreOutOfVocabulary) {
  const EmbeddingModel m = compass();
  EXPECT_FALSE(m.contains("south"));
  EXPECT_FALSE(m.find("south"));
  EXPECT_THROW(m.vector("south"), OutOfVocabulary);
  EXPECT_THROW(m.neighbors("south"), OutOfVocabulary);
  try {
    m.distance("east", "south");
    FAIL();
  } catch (const OutOfVocabulary& e) {
    EXPECT_EQ(e.word(), "south");
  }
}

TEST(Model, ConstructorValidatesNeighborLists) {
  std::map<std::string, std::vector<double>> vecs = {{"a", v2(1, 0)}, {"b", v2(0, 1)}};
  const double d = cosine_distance(v2(1, 0), v2(0, 1));
  EXPECT_NO_THROW(EmbeddingModel("ok", 2, vecs, {{"a", {{"b", d}}}, {"b", {{"a", d}}}}));
  EXPECT_THROW(EmbeddingModel("self", 2, vecs, {{"a", {{"a", 0.0}}}, {"b", {{"a", d}}}}), InvalidInput);
  EXPECT_THROW(EmbeddingModel("off", 2, vecs, {{"a", {{"b", d + 0.01}}}, {"b", {{"a", d}}}}), InvalidInput);
  EXPECT_THROW(EmbeddingModel("unknown", 2, vecs, {{"a", {{"c", d}}}, {"b", {{"a", d}}}}), InvalidInput);
  EXPECT_THROW(EmbeddingModel("partial", 2, vecs, {{"a", {{"b", d}}}}), InvalidInput);
  EXPECT_THROW(EmbeddingModel("dim", 3, vecs, {{"a", {{"b", d}}}, {"b", {{"a", d}}}}), InvalidInput);
}

TEST(ModelFile, WriteReadRoundTrip) {
  const EmbeddingModel m = build_model("round", testing_support::random_vectors(12, 40, 6), 7);
  std::stringstream ss;
  write_model(ss, m);
  const EmbeddingModel back = read_model(ss);
  EXPECT_EQ(back.name(), "round");
  EXPECT_EQ(back.dim(), 6u);
  EXPECT_EQ(back.k(), 7u);
  EXPECT_EQ(back.words(), m.words());
  for (const auto& w : m.words()) {
    const auto a = m.vector(w), b = back.vector(w);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(a[i], b[i]);
    EXPECT_EQ(back.neighbors(w).size(), m.neighbors(w).size());
    for (std::size_t i = 0; i < m.neighbors(w).size(); ++i) {
      EXPECT_EQ(back.neighbors(w)[i].word, m.neighbors(w)[i].word);
      EXPECT_DOUBLE_EQ(back.neighbors(w)[i].distance, m.neighbors(w)[i].distance);
    }
  }
}

TEST(ModelFile, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "codenames_model_test.txt";
  save_model(path, compass());
  EXPECT_EQ(load_model(path).words(), compass().words());
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), ConfigError);
}

TEST(ModelFile, ErrorsCarryLineNumbers) {
  const std::string header = "#model m 2 2 1\n";
  const std::string good_a = "V a 1 0\nN a b:1\n";
  const std::string good_b = "V b 0 1\nN b a:1\n";
  EXPECT_EQ(parse_error_line("V a 1 0\n"), 1u);                              // missing header
  EXPECT_EQ(parse_error_line(header + "V a 1\n"), 2u);                       // short vector
  EXPECT_EQ(parse_error_line(header + "V a 1 x\n"), 2u);                     // bad number
  EXPECT_EQ(parse_error_line(header + "V a 0 0\n"), 2u);                     // zero vector
  EXPECT_EQ(parse_error_line(header + good_a + "V a 1 0\n"), 4u);            // duplicate
  EXPECT_EQ(parse_error_line(header + good_a + "N b a\n"), 4u);              // no distance
  EXPECT_EQ(parse_error_line(header + good_a + "N b a:3\n"), 4u);            // out of range
  EXPECT_EQ(parse_error_line(header + good_a + "X b\n"), 4u);                // unknown record
  EXPECT_EQ(parse_error_line(header + "V a 1 0\nN a b:0.5\n" + good_b), 3u);  // stored distance mismatch
  EXPECT_EQ(parse_error_line(header + "V a 1 0\nN a c:1\n" + good_b), 3u);    // unknown neighbor
  EXPECT_EQ(parse_error_line("#model m 2 3 1\n" + good_a + good_b), 5u);     // vocab count
  EXPECT_EQ(parse_error_line(header + good_a + good_b), 0u);
}

TEST(NearestWords, OrderedByDistanceThenWord) {
  const EmbeddingModel m = compass();
  const std::vector<std::string> board{"west", "north", "northeast"};
  EXPECT_EQ(nearest_board_words(m, "east", board, 2), (std::vector<std::string>{"northeast", "north"}));
  const EmbeddingModel t = build_model("ties", {{"up", v2(0, 1)}, {"right", v2(1, 0)}, {"left", v2(-1, 0)}}, 2);
  EXPECT_EQ(nearest_board_words(t, "up", std::vector<std::string>{"right", "left"}, 1),
            (std::vector<std::string>{"left"}));
}

TEST(NearestWords, IndependentOfCandidateOrder) {
  const auto model = testing_support::random_model(13, 60, 5, 20);
  std::vector<std::string> cands(model->words().begin() + 1, model->words().begin() + 26);
  const std::string clue = model->words().front();
  const auto expected = nearest_board_words(*model, clue, cands, 5);
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    rng.shuffle(cands);
    EXPECT_EQ(nearest_board_words(*model, clue, cands, 5), expected);
  }
}

TEST(NearestWords, Errors) {
  const EmbeddingModel m = compass();
  const std::vector<std::string> board{"west", "north"};
  EXPECT_THROW(nearest_board_words(m, "south", board, 1), OutOfVocabulary);
  EXPECT_THROW(nearest_board_words(m, "east", board, 3), InvalidInput);
  const std::vector<std::string> missing{"west", "south"};
  EXPECT_THROW(nearest_board_words(m, "east", missing, 1), OutOfVocabulary);
}
