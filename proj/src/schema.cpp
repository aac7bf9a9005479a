#include "narsql/schema.hpp"

#include <fstream>
#include <sstream>

#include "narsql/lexer.hpp"
#include "narsql/text.hpp"
#include "token_cursor.hpp"

namespace narsql {

int TableDef::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (text::iequals(columns[i].name, column)) return static_cast<int>(i);
  }
  return -1;
}

const ColumnDef* TableDef::find_column(std::string_view column) const {
  const int i = column_index(column);
  return i < 0 ? nullptr : &columns[static_cast<std::size_t>(i)];
}

void Schema::add_table(TableDef table) {
  if (find_table(table.name)) throw std::invalid_argument("duplicate table " + table.name);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.column_index(table.columns[i].name) != static_cast<int>(i)) {
      throw std::invalid_argument("duplicate column " + table.columns[i].name + " in " + table.name);
    }
  }
  if (table.primary_key && !table.find_column(*table.primary_key)) {
    throw std::invalid_argument("primary key " + *table.primary_key + " is not a column of " + table.name);
  }
  tables_.push_back(std::move(table));
}

const TableDef* Schema::find_table(std::string_view name) const {
  for (const auto& t : tables_) {
    if (text::iequals(t.name, name)) return &t;
  }
  return nullptr;
}

std::vector<std::string> Schema::tables_with_column(std::string_view column) const {
  std::vector<std::string> out;
  for (const auto& t : tables_) {
    if (t.find_column(column)) out.push_back(t.name);
  }
  return out;
}

std::optional<DataType> parse_datatype(std::string_view spelling) {
  try {
    const auto tokens = tokenize(spelling);
    detail::TokenCursor cur(tokens);
    auto type = cur.accept_datatype();
    if (!type || !cur.at_end()) return std::nullopt;
    return type;
  } catch (const LexError&) {
    return std::nullopt;
  }
}

Schema Schema::parse(std::string_view source) {
  Schema schema;
  std::optional<TableDef> current;
  std::size_t line_no = 0;
  std::size_t table_line = 0;
  const auto flush = [&] {
    if (!current) return;
    try {
      schema.add_table(std::move(*current));
    } catch (const std::invalid_argument& e) {
      throw SchemaParseError(table_line, e.what());
    }
    current.reset();
  };
  for (const auto& raw : text::split(source, '\n')) {
    ++line_no;
    auto line = text::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string record, name;
    in >> record >> name;
    std::string rest;
    std::getline(in, rest);
    rest = text::trim(rest);
    if (name.empty()) throw SchemaParseError(line_no, "record '" + record + "' needs a name");
    if (record == "table" && rest.empty()) {
      flush();
      current = TableDef{name, {}, std::nullopt};
      table_line = line_no;
    } else if (record == "column" && !rest.empty()) {
      if (!current) throw SchemaParseError(line_no, "column outside a table");
      const auto type = parse_datatype(rest);
      if (!type) throw SchemaParseError(line_no, "unknown type '" + rest + "'");
      current->columns.push_back({name, *type});
    } else if (record == "pk" && rest.empty()) {
      if (!current) throw SchemaParseError(line_no, "pk outside a table");
      if (current->primary_key) throw SchemaParseError(line_no, "second primary key");
      current->primary_key = name;
    } else {
      throw SchemaParseError(line_no, "unrecognised record '" + line + "'");
    }
  }
  flush();
  return schema;
}

Schema Schema::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read schema file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace narsql
