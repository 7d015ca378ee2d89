#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codenames {

// Caller supplied something that violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A four-digit outcome label that does not name one of the 36 legal outcomes.
class InvalidOutcome : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class EmptyCounts : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A word the embedding model has no vector for.
class OutOfVocabulary : public InvalidInput {
 public:
  explicit OutOfVocabulary(const std::string& word)
      : InvalidInput("word not in vocabulary: '" + word + "'"), word_(word) {}

  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace codenames
