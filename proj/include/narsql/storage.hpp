#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/schema.hpp"

namespace narsql {

// monostate is SQL NULL.
using Value = std::variant<std::monostate, std::int64_t, double, bool, std::string>;
using Row = std::vector<Value>;

std::string to_string(const Value& v);  // NULL renders as the empty string
bool is_null(const Value& v);

class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownTable : public StorageError {
 public:
  explicit UnknownTable(const std::string& name) : StorageError("unknown table " + name) {}
};

class UnknownColumn : public StorageError {
 public:
  UnknownColumn(const std::string& table, const std::string& column)
      : StorageError("unknown column " + column + " in table " + table) {}
};

class TypeMismatch : public StorageError {
 public:
  using StorageError::StorageError;
};

class DuplicateTable : public StorageError {
 public:
  explicit DuplicateTable(const std::string& name) : StorageError("table " + name + " already exists") {}
};

class FixtureTypeError : public StorageError {
 public:
  using StorageError::StorageError;
};

// Converts a literal to the column's type; throws TypeMismatch.
Value coerce(const Literal& v, const DataType& type);
// Parses a fixture field; the empty string is NULL. Throws TypeMismatch.
Value parse_value(std::string_view field, const DataType& type);

// SQL LIKE with '%' and '_' wildcards.
bool like_match(std::string_view value, std::string_view pattern);

struct Table {
  TableDef def;
  std::vector<Row> rows;
};

class Database {
 public:
  Database() = default;
  explicit Database(const Schema& schema);

  Table* find(std::string_view name);
  const Table* find(std::string_view name) const;
  Table& get(std::string_view name);  // throws UnknownTable
  const Table& get(std::string_view name) const;

  const std::vector<Table>& tables() const { return tables_; }
  std::vector<Table>& tables() { return tables_; }
  Schema schema() const;

  std::set<std::string>& databases() { return databases_; }
  const std::set<std::string>& databases() const { return databases_; }

 private:
  std::vector<Table> tables_;
  std::set<std::string> databases_;  // lowercase names from CREATE DATABASE
};

enum class ResultKind { Rows, Affected, Created, Dropped, Altered };

struct ExecResult {
  ResultKind kind = ResultKind::Affected;
  std::vector<std::string> header;  // Rows only
  std::vector<Row> rows;            // Rows only
  std::size_t count = 0;            // rows returned or affected
  bool operator==(const ExecResult&) const = default;
};

ExecResult execute(const SqlStatement& s, Database& db);
// Runs the inner query first and applies the outer statement to its values.
ExecResult execute(const NestedQuery& q, Database& db);

// Row filter shared by execution and its tests.
bool matches(const Filter& f, const Table& t, const Row& row);
bool matches(const Predicate& p, const Table& t, const Row& row);

// One CSV file per table named after the lowercased table name; tables without
// a file stay empty. Throws FixtureTypeError.
void seed(Database& db, const std::filesystem::path& fixture_dir);
Database load_database(const std::filesystem::path& schema_file, const std::filesystem::path& fixture_dir);

std::vector<std::string> parse_csv_line(std::string_view line);
void write_csv(const Table& t, std::ostream& out);
void dump(const Database& db, const std::filesystem::path& dir);

}  // namespace narsql
