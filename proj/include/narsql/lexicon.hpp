#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace narsql {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ActionTrigger {
  std::string trigger;    // lowercase, single-spaced
  std::string canonical;  // SELECT, INSERT, UPDATE, DELETE or CREATE
  int index = 0;
};

struct ColumnTrigger {
  std::string trigger;
  std::string column;  // "*" for every column
  std::optional<std::string> table_hint;
  int index = 0;
};

struct TableTrigger {
  std::string trigger;
  std::string table;
  int index = 0;
};

class Lexicon {
 public:
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::filesystem::path& path);
  static const Lexicon& builtin();

  const std::vector<ActionTrigger>& actions() const { return actions_; }
  const std::vector<ColumnTrigger>& columns() const { return columns_; }
  const std::vector<TableTrigger>& tables() const { return tables_; }

  // Phrase lookups compare folded forms and match across singular and plural.
  const ActionTrigger* find_action(std::string_view phrase) const;
  std::vector<const ColumnTrigger*> find_columns(std::string_view phrase) const;
  const TableTrigger* find_table(std::string_view phrase) const;
  bool is_stopword(std::string_view word) const;

  // Symbol index of a canonical column or table; -1 when unlisted.
  int column_index(std::string_view column) const;
  int table_index(std::string_view table) const;
  int column_symbol_count() const { return column_count_; }
  int table_symbol_count() const { return table_count_; }

  static constexpr std::string_view kAllColumns = "*";

 private:
  std::vector<ActionTrigger> actions_;
  std::vector<ColumnTrigger> columns_;
  std::vector<TableTrigger> tables_;
  std::set<std::string, std::less<>> stopwords_;
  int column_count_ = 0;
  int table_count_ = 0;
};

}  // namespace narsql
