#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/jfa.hpp"
#include "narsql/lexicon.hpp"
#include "narsql/schema.hpp"

namespace narsql {

enum class NlItemKind { Action, Column, Table, Value, Conjunction };

// One recognised unit of a request, in source order.
struct NlItem {
  NlItemKind kind = NlItemKind::Action;
  std::string surface;  // words as typed
  std::optional<JfaSymbol> symbol;
  // Action: SELECT/UPDATE/... ; Table: schema table name; Value: literal text;
  // Conjunction: "and" or "or".
  std::string canonical;
  // Column: candidate column names, schema matches before synonyms; "*" alone
  // for every column.
  std::vector<std::string> columns;
  std::optional<std::string> table_hint;
  // Value: the marker that introduced it ("to", "is", ...), empty otherwise.
  std::string marker;
  bool quoted = false;
  bool operator==(const NlItem&) const = default;
};

struct NlRequest {
  std::string raw;
  std::vector<std::string> content_tokens;  // lowercased words mapped to symbols or left unresolved
  std::vector<JfaSymbol> symbols;
  std::vector<std::string> unresolved;
  std::vector<NlItem> items;
};

enum class SynthesisErrorKind { MissingAction, MissingTable, MissingKeywords, AmbiguousColumn, Rejected };

class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(SynthesisErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  SynthesisErrorKind kind() const { return kind_; }

 private:
  SynthesisErrorKind kind_;
};

class MissingAction : public SynthesisError {
 public:
  MissingAction() : SynthesisError(SynthesisErrorKind::MissingAction, "the request names no action") {}
};

class MissingTable : public SynthesisError {
 public:
  MissingTable() : SynthesisError(SynthesisErrorKind::MissingTable, "the request names no table") {}
};

class MissingKeywords : public SynthesisError {
 public:
  MissingKeywords()
      : SynthesisError(SynthesisErrorKind::MissingKeywords, "the request names neither a table nor a column") {}
};

class AmbiguousColumn : public SynthesisError {
 public:
  AmbiguousColumn(std::string column, std::vector<std::string> tables);
  const std::string& column() const { return column_; }
  const std::vector<std::string>& tables() const { return tables_; }

 private:
  std::string column_;
  std::vector<std::string> tables_;
};

class Rejected : public SynthesisError {
 public:
  explicit Rejected(const std::string& why) : SynthesisError(SynthesisErrorKind::Rejected, why) {}
};

// Lexicon, schema and the acceptance machine derived from both. Immutable.
class Translator {
 public:
  Translator(Lexicon lexicon, Schema schema);

  NlRequest normalize(std::string_view raw) const;
  // Throws a SynthesisError subclass.
  SqlStatement synthesize(const NlRequest& request) const;
  SqlStatement translate(std::string_view raw) const { return synthesize(normalize(raw)); }
  // Appends a clarifying answer to a pending request and normalises again.
  NlRequest merge(const NlRequest& pending, std::string_view answer) const;

  const Lexicon& lexicon() const { return lexicon_; }
  const Schema& schema() const { return schema_; }
  const JfaMachine& machine() const { return machine_; }

  JfaSymbol column_symbol(std::string_view column) const;
  JfaSymbol table_symbol(std::string_view table) const;

 private:
  JfaMachine build_machine() const;

  Lexicon lexicon_;
  Schema schema_;
  std::vector<std::string> extra_columns_;  // folded schema columns missing from the lexicon
  std::vector<std::string> extra_tables_;
  JfaMachine machine_;
};

NlRequest normalize(std::string_view raw, const Lexicon& lexicon, const Schema& schema);
SqlStatement synthesize(const NlRequest& request, const Lexicon& lexicon, const Schema& schema);

struct NlPair {
  int item = 0;
  std::string narration;
  std::string gold_sql;
};

struct PairOutcome {
  int item = 0;
  bool matched = false;
  bool gold_parses = true;
  std::string synthesized;  // canonical SQL, or empty
  std::string error;        // synthesis or gold parse failure
};

struct Accuracy {
  std::size_t matched = 0;
  std::size_t total = 0;
  std::size_t unmatchable = 0;  // gold SQL that does not parse
  double ratio = 0.0;
  bool defined = false;  // false for an empty pair list
  std::vector<PairOutcome> outcomes;
};

// Identifiers folded onto their schema spelling so that comparisons ignore
// case, underscores and plural forms.
SqlStatement canonicalize(const SqlStatement& s, const Schema& schema);

Accuracy evaluate_pairs(const std::vector<NlPair>& pairs, const Translator& translator);

}  // namespace narsql
