#pragma once

#include <string>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/narrator.hpp"
#include "narsql/nl2sql.hpp"
#include "narsql/schema.hpp"
#include "narsql/storage.hpp"
#include "narsql/vocabulary.hpp"

namespace narsql {

// Alter covers ALTER TABLE and RENAME; Drop and Truncate report as Delete,
// row inserts as Create.
enum class FeedbackKind { Create, Read, Update, Delete, Alter, ClarifyTable, ClarifyAttribute, ClarifyKeywords };

struct Feedback {
  FeedbackKind kind = FeedbackKind::Read;
  std::string text;
  bool operator==(const Feedback&) const = default;
};

struct FeedbackOptions {
  bool polish = false;  // grammatical variant of the read report
};

class FeedbackGenerator {
 public:
  explicit FeedbackGenerator(const Vocabulary& vocabulary = Vocabulary::builtin(), FeedbackOptions options = {});

  // Reports an executed statement; `result` is what execute() returned for it.
  Feedback report(const SqlStatement& s, const ExecResult& result) const;
  Feedback report(const NestedQuery& q, const ExecResult& result) const;
  // The question put to the user when a request cannot be synthesised.
  Feedback clarify(const SynthesisError& error, const Schema& schema) const;

  static const std::vector<std::string>& required_keys();

 private:
  std::string record(std::size_t count) const;
  std::string count_phrase(std::size_t count) const;
  std::string read_text(const Projection& p, const std::string& table, std::size_t count) const;

  Vocabulary vocab_;
  Narrator narrator_;
  FeedbackOptions options_;
};

Feedback feedback_for(const SqlStatement& s, const ExecResult& result, FeedbackOptions options = {});
Feedback feedback_for(const NestedQuery& q, const ExecResult& result, FeedbackOptions options = {});
Feedback clarify(const SynthesisError& error, const Schema& schema);

}  // namespace narsql
