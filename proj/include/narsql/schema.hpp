#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "narsql/ast.hpp"

namespace narsql {

class SchemaParseError : public std::runtime_error {
 public:
  SchemaParseError(std::size_t line, const std::string& what)
      : std::runtime_error("schema line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  std::optional<std::string> primary_key;

  // Case-insensitive lookups; -1 / nullptr when absent.
  int column_index(std::string_view column) const;
  const ColumnDef* find_column(std::string_view column) const;
  bool operator==(const TableDef&) const = default;
};

class Schema {
 public:
  Schema() = default;

  // Throws std::invalid_argument on a duplicate table or column name or a
  // primary key naming no column.
  void add_table(TableDef table);

  const std::vector<TableDef>& tables() const { return tables_; }
  const TableDef* find_table(std::string_view name) const;
  // Tables declaring the column, in schema order.
  std::vector<std::string> tables_with_column(std::string_view column) const;

  // Records: table NAME, column NAME TYPE, pk NAME; '#' starts a comment.
  static Schema parse(std::string_view text);
  static Schema load(const std::filesystem::path& path);

 private:
  std::vector<TableDef> tables_;
};

// Keyword spelling such as "int" or "varchar(45)".
std::optional<DataType> parse_datatype(std::string_view text);

}  // namespace narsql
