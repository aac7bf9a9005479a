#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace narsql {

enum class DataTypeKind { Int, Varchar, Bool, Float };

struct DataType {
  DataTypeKind kind = DataTypeKind::Int;
  std::optional<int> length;  // varchar only
  bool operator==(const DataType&) const = default;
};

struct ColumnDef {
  std::string name;
  DataType type;
  bool operator==(const ColumnDef&) const = default;
};

enum class LiteralType { Int, Varchar, Bool, Float };

struct Literal {
  LiteralType type = LiteralType::Varchar;
  std::string text;  // unquoted; booleans are lowercase
  bool operator==(const Literal&) const = default;
};

enum class CompareOp { Eq, Ne, Gt, Lt, Ge, Le, NotLt, NotGt };

std::string_view symbol(CompareOp op);
std::optional<CompareOp> parse_compare_op(std::string_view sym);

enum class PredicateKind { Compare, In, Between, Like };

struct Predicate {
  std::string column;
  PredicateKind kind = PredicateKind::Compare;
  CompareOp op = CompareOp::Eq;  // Compare only
  // Compare and Like hold one value, Between two, In one or more.
  std::vector<Literal> values;
  bool operator==(const Predicate&) const = default;
};

enum class Conjunction { And, Or };

struct Filter {
  bool negated = false;  // leading NOT; never combined with a conjunction
  Predicate first;
  std::optional<Conjunction> conjunction;
  std::optional<Predicate> second;
  bool operator==(const Filter&) const = default;
};

enum class ProjectionKind { All, Columns, Distinct, Count };

struct Projection {
  ProjectionKind kind = ProjectionKind::All;
  std::vector<std::string> columns;  // empty for All, one entry for Count
  bool operator==(const Projection&) const = default;
};

enum class SortDirection { Asc, Desc };

struct OrderBy {
  std::string column;
  SortDirection direction = SortDirection::Asc;
  bool operator==(const OrderBy&) const = default;
};

struct GroupBy {
  std::string column;
  bool operator==(const GroupBy&) const = default;
};

struct HavingCount {
  std::string group_column;
  std::string column;
  CompareOp op = CompareOp::Eq;
  Literal value;
  bool operator==(const HavingCount&) const = default;
};

using Modifier = std::variant<OrderBy, GroupBy, HavingCount>;

struct CreateDatabase {
  std::string name;
  bool if_not_exists = false;
  bool operator==(const CreateDatabase&) const = default;
};

struct CreateTable {
  std::string name;
  std::vector<ColumnDef> columns;
  bool if_not_exists = false;
  bool operator==(const CreateTable&) const = default;
};

struct AlterRename {
  std::string table;
  std::string new_name;
  bool operator==(const AlterRename&) const = default;
};

enum class AlterAction { Add, Drop, Modify };

struct AlterColumn {
  std::string table;
  AlterAction action = AlterAction::Add;
  ColumnDef column;
  bool operator==(const AlterColumn&) const = default;
};

struct DropDatabase {
  std::vector<std::string> names;
  bool if_exists = false;
  bool operator==(const DropDatabase&) const = default;
};

struct DropTable {
  std::vector<std::string> names;
  bool if_exists = false;
  bool operator==(const DropTable&) const = default;
};

struct RenameTable {
  std::string from;
  std::string to;
  bool operator==(const RenameTable&) const = default;
};

struct Truncate {
  std::string table;
  bool operator==(const Truncate&) const = default;
};

struct Delete {
  std::string table;
  Filter filter;
  bool operator==(const Delete&) const = default;
};

struct Insert {
  std::string table;
  std::vector<std::string> columns;
  std::vector<Literal> values;
  bool operator==(const Insert&) const = default;
};

struct Update {
  std::string table;
  std::string column;
  Literal value;
  std::optional<Filter> filter;
  bool operator==(const Update&) const = default;
};

struct Select {
  Projection projection;
  std::string table;
  std::optional<Filter> filter;
  std::optional<Modifier> modifier;
  bool operator==(const Select&) const = default;
};

using SqlStatement = std::variant<CreateDatabase, CreateTable, AlterRename, AlterColumn,
                                  DropDatabase, DropTable, RenameTable, Truncate, Delete,
                                  Insert, Update, Select>;

// Inner query of every nested form: one table, at most one comparison.
struct SelectSub {
  Projection projection;  // All, Columns or Distinct with one column
  std::string table;
  std::optional<Predicate> condition;  // absent only under the lenient grammar
  bool operator==(const SelectSub&) const = default;
};

struct UpdateSub {
  std::string table;
  std::string set_column;
  CompareOp set_op = CompareOp::Eq;
  Literal set_value;
  std::string in_column;
  SelectSub inner;
  bool operator==(const UpdateSub&) const = default;
};

struct DeleteSub {
  std::string table;
  std::string where_column;
  // A comparison symbol such as "=" or a logical operator name such as "IN".
  std::string op;
  SelectSub inner;
  bool operator==(const DeleteSub&) const = default;
};

struct InsertSub {
  std::string table;
  std::vector<std::string> columns;
  SelectSub inner;
  bool operator==(const InsertSub&) const = default;
};

struct SelectSubQ {
  Projection projection;
  std::string table;
  std::string in_column;
  SelectSub inner;
  bool operator==(const SelectSubQ&) const = default;
};

using NestedQuery = std::variant<UpdateSub, DeleteSub, InsertSub, SelectSubQ>;

// Canonical SQL text: uppercase keywords, single spaces, ", " separators and
// a trailing semicolon.
std::string render(const SqlStatement& s);
std::string render(const NestedQuery& q);
// The inner query without a terminator.
std::string render(const SelectSub& s);

std::string render(const Literal& v);
std::string render(const DataType& t);
std::string render(const Predicate& p);
std::string render(const Filter& f);
std::string render(const Projection& p);

// Identifiers and literal texts of an AST, in source order.
std::vector<std::string> mentioned_names(const SqlStatement& s);
std::vector<std::string> mentioned_names(const NestedQuery& q);

const SelectSub& inner_of(const NestedQuery& q);
const std::string& table_of(const SqlStatement& s);

bool is_numeric(const Literal& v);

}  // namespace narsql
