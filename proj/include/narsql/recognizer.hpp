#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/lexer.hpp"

namespace narsql {

class RecognitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotRecognized : public RecognitionError {
 public:
  explicit NotRecognized(std::string reason)
      : RecognitionError("statement not recognized: " + reason), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

// A parenthesised SELECT was found; the statement belongs to the nested grammar.
class NestedDetected : public RecognitionError {
 public:
  NestedDetected() : RecognitionError("nested query detected") {}
};

SqlStatement classify(const std::vector<Token>& tokens);
SqlStatement classify(std::string_view source);

enum class Outcome { Recognized, Nested, Failed };

struct Verdict {
  Outcome outcome = Outcome::Failed;
  std::string reason;  // empty when recognized
  std::optional<SqlStatement> statement;
};

struct RecognitionReport {
  std::size_t recognized = 0;
  std::size_t nested = 0;
  std::size_t failed = 0;
  std::vector<Verdict> verdicts;

  std::size_t total() const { return recognized + nested + failed; }
};

RecognitionReport classify_batch(const std::vector<std::string>& statements);

}  // namespace narsql
