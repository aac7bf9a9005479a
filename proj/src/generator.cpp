#include "narsql/generator.hpp"

#include <algorithm>

namespace narsql {

namespace {

const std::vector<std::string> kTables = {"student", "lecturer", "Course", "orders", "Products",
                                          "Customers", "EMPLOYEE_TBL", "dept_2", "t"};
const std::vector<std::string> kColumns = {"id", "name", "age", "City", "country", "price", "qty",
                                           "title", "grade", "email", "EMP_ID", "last_name", "x1"};
const std::vector<std::string> kWords = {"Pretoria", "John", "Computer Science", "p_%", "O'Brien",
                                         "a;b", "x", "South Africa", "2011-09-01", "(note)"};
const std::vector<std::string> kNestedOps = {"=", "!=", ">", "<", ">=", "<=", "!<", "!>", "IN", "ANY",
                                             "LIKE", "NOT", "EXISTS", "OR", "AND", "XOR", "IS NULL", "UNIQUE"};
const std::vector<CompareOp> kOps = {CompareOp::Eq, CompareOp::Ne, CompareOp::Gt, CompareOp::Lt,
                                     CompareOp::Ge, CompareOp::Le, CompareOp::NotLt, CompareOp::NotGt};

constexpr const char* kOuterTable = "outer_t";
constexpr const char* kInnerTable = "inner_t";
const std::vector<std::string> kLetters = {"x", "y", "z", "w"};

}  // namespace

std::string Generator::table_name() { return pick(kTables); }
std::string Generator::column_name() { return pick(kColumns); }

std::vector<std::string> Generator::distinct_columns(std::size_t n) {
  auto cols = kColumns;
  std::shuffle(cols.begin(), cols.end(), rng_);
  cols.resize(std::min(n, cols.size()));
  return cols;
}

Literal Generator::literal_of(LiteralType type) {
  switch (type) {
    case LiteralType::Int: {
      const auto v = static_cast<long long>(below(2000)) - 200;
      return {LiteralType::Int, std::to_string(v)};
    }
    case LiteralType::Float: return {LiteralType::Float, std::to_string(below(500)) + "." + std::to_string(below(100))};
    case LiteralType::Bool: return {LiteralType::Bool, coin() ? "true" : "false"};
    case LiteralType::Varchar: return {LiteralType::Varchar, pick(kWords)};
  }
  return {};
}

Literal Generator::literal() {
  static const std::vector<LiteralType> types = {LiteralType::Int, LiteralType::Varchar, LiteralType::Varchar,
                                                 LiteralType::Float, LiteralType::Bool};
  return literal_of(pick(types));
}

DataType Generator::datatype() {
  switch (below(5)) {
    case 0: return {DataTypeKind::Int, std::nullopt};
    case 1: return {DataTypeKind::Bool, std::nullopt};
    case 2: return {DataTypeKind::Float, std::nullopt};
    case 3: return {DataTypeKind::Varchar, std::nullopt};
    default: return {DataTypeKind::Varchar, static_cast<int>(1 + below(255))};
  }
}

CompareOp Generator::compare_op() { return pick(kOps); }

Predicate Generator::predicate() {
  Predicate p;
  p.column = column_name();
  switch (below(4)) {
    case 0:
      p.kind = PredicateKind::Compare;
      p.op = compare_op();
      p.values = {literal()};
      break;
    case 1:
      p.kind = PredicateKind::In;
      for (std::size_t i = 0, n = 1 + below(3); i < n; ++i) p.values.push_back(literal());
      break;
    case 2:
      p.kind = PredicateKind::Between;
      p.values = {literal(), literal()};
      break;
    default:
      p.kind = PredicateKind::Like;
      p.values = {literal_of(LiteralType::Varchar)};
      break;
  }
  return p;
}

Filter Generator::filter() {
  Filter f;
  f.first = predicate();
  switch (below(4)) {
    case 0: f.negated = true; break;
    case 1:
      f.conjunction = coin() ? Conjunction::And : Conjunction::Or;
      f.second = predicate();
      break;
    default: break;
  }
  return f;
}

Projection Generator::projection() {
  switch (below(4)) {
    case 0: return {};
    case 1: return {ProjectionKind::Columns, distinct_columns(1 + below(3))};
    case 2: return {ProjectionKind::Distinct, distinct_columns(1 + below(2))};
    default: return {ProjectionKind::Count, {column_name()}};
  }
}

Select Generator::select() {
  Select s;
  s.projection = projection();
  s.table = table_name();
  if (coin()) s.filter = filter();
  switch (below(4)) {
    case 0: s.modifier = OrderBy{column_name(), coin() ? SortDirection::Asc : SortDirection::Desc}; break;
    case 1: s.modifier = GroupBy{column_name()}; break;
    case 2:
      if (s.projection.kind == ProjectionKind::Count) {
        s.modifier = HavingCount{column_name(), column_name(), compare_op(), literal_of(LiteralType::Int)};
      }
      break;
    default: break;
  }
  return s;
}

SqlStatement Generator::statement() {
  const auto columns = [this](std::size_t n) {
    std::vector<ColumnDef> defs;
    for (const auto& c : distinct_columns(n)) defs.push_back({c, datatype()});
    return defs;
  };
  const auto names = [this](std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(table_name());
    return out;
  };
  switch (below(12)) {
    case 0: return CreateDatabase{table_name() + "_db", coin()};
    case 1: return CreateTable{table_name(), columns(1 + below(4)), coin()};
    case 2: return AlterRename{table_name(), table_name()};
    case 3: {
      static const std::vector<AlterAction> actions = {AlterAction::Add, AlterAction::Drop, AlterAction::Modify};
      return AlterColumn{table_name(), pick(actions), columns(1).front()};
    }
    case 4: return DropDatabase{names(1 + below(3)), coin()};
    case 5: return DropTable{names(1 + below(3)), coin()};
    case 6: return RenameTable{table_name(), table_name()};
    case 7: return Truncate{table_name()};
    case 8: return Delete{table_name(), filter()};
    case 9: {
      Insert i;
      i.table = table_name();
      i.columns = distinct_columns(1 + below(4));
      for (std::size_t k = 0; k < i.columns.size(); ++k) i.values.push_back(literal());
      return i;
    }
    case 10: {
      Update u{table_name(), column_name(), literal(), std::nullopt};
      if (coin()) u.filter = filter();
      return u;
    }
    default: return select();
  }
}

SelectSub Generator::select_sub(NestedParseOptions options) {
  SelectSub s;
  switch (below(3)) {
    case 0: break;
    case 1: s.projection = {ProjectionKind::Columns, distinct_columns(1 + below(2))}; break;
    default: s.projection = {ProjectionKind::Distinct, {column_name()}}; break;
  }
  s.table = table_name();
  if (options.strict || below(4) != 0) {
    Predicate p{column_name(), PredicateKind::Compare, compare_op(), {}};
    p.values = {options.strict ? literal_of(LiteralType::Varchar) : literal()};
    s.condition = p;
  }
  return s;
}

NestedQuery Generator::nested(NestedParseOptions options) {
  switch (below(4)) {
    case 0: {
      UpdateSub u;
      u.table = table_name();
      u.set_column = column_name();
      u.set_op = options.strict ? compare_op() : CompareOp::Eq;
      u.set_value = options.strict ? literal_of(LiteralType::Int) : literal();
      u.in_column = column_name();
      u.inner = select_sub(options);
      return u;
    }
    case 1: return DeleteSub{table_name(), column_name(), pick(kNestedOps), select_sub(options)};
    case 2: return InsertSub{table_name(), distinct_columns(1 + below(3)), select_sub(options)};
    default: {
      SelectSubQ s;
      s.projection = projection();
      if (s.projection.kind == ProjectionKind::Count) s.projection = {};
      if (s.projection.kind == ProjectionKind::Distinct) s.projection.columns.resize(1);
      s.table = table_name();
      s.in_column = column_name();
      s.inner = select_sub(options);
      return s;
    }
  }
}

std::string Generator::wrap_in_subquery(const Select& s) {
  Select outer = s;
  outer.filter.reset();
  outer.modifier.reset();
  std::string text = render(SqlStatement{outer});
  text.pop_back();
  return text + " WHERE " + column_name() + " IN (" + render(select_sub({})) + ");";
}

std::vector<std::string> Generator::statement_corpus(std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(render(statement()));
  return out;
}

Database Generator::database(std::size_t max_rows) {
  Schema schema;
  const std::vector<ColumnDef> cols = {{"id", {DataTypeKind::Int, std::nullopt}},
                                       {"a", {DataTypeKind::Int, std::nullopt}},
                                       {"b", {DataTypeKind::Varchar, 10}}};
  schema.add_table({kOuterTable, cols, std::nullopt});
  schema.add_table({kInnerTable, cols, std::nullopt});
  Database db(schema);
  for (const char* name : {kOuterTable, kInnerTable}) {
    auto& table = db.get(name);
    const std::size_t n = below(max_rows + 1);
    for (std::size_t i = 0; i < n; ++i) {
      table.rows.push_back({Value{static_cast<std::int64_t>(i + 1)}, Value{static_cast<std::int64_t>(below(6))},
                            Value{pick(kLetters)}});
    }
  }
  return db;
}

NestedQuery Generator::executable_nested() {
  const bool numeric = coin();
  const std::string column = numeric ? "a" : "b";
  SelectSub inner;
  inner.projection = {coin() ? ProjectionKind::Columns : ProjectionKind::Distinct, {column}};
  // A key lookup keeps scalar comparisons to at most one inner row.
  const bool scalar = below(3) == 0;
  inner.table = kInnerTable;
  if (scalar) {
    inner.condition = Predicate{"id", PredicateKind::Compare, CompareOp::Eq, {literal_of(LiteralType::Int)}};
    inner.condition->values[0].text = std::to_string(1 + below(25));
  } else if (below(4) != 0) {
    Predicate p;
    p.kind = PredicateKind::Compare;
    if (coin()) {
      p.column = "a";
      p.op = compare_op();
      p.values = {{LiteralType::Int, std::to_string(below(6))}};
    } else {
      p.column = "b";
      p.op = coin() ? CompareOp::Eq : CompareOp::Ne;
      p.values = {{LiteralType::Varchar, pick(kLetters)}};
    }
    inner.condition = p;
  }
  if (coin()) {
    std::string op = "IN";
    if (scalar) {
      static const std::vector<std::string> scalar_ops = {"=", "!=", ">", "<", ">=", "<="};
      op = numeric ? pick(scalar_ops) : (coin() ? "=" : "LIKE");
    }
    return DeleteSub{kOuterTable, column, op, inner};
  }
  SelectSubQ s;
  s.projection = coin() ? Projection{} : Projection{ProjectionKind::Columns, {"id", column}};
  s.table = kOuterTable;
  s.in_column = column;
  s.inner = inner;
  return s;
}

}  // namespace narsql
