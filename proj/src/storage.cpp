#include "narsql/storage.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "narsql/text.hpp"
#include "overload.hpp"

namespace narsql {

std::string to_string(const Value& v) {
  return std::visit(Overload{
                        [](std::monostate) { return std::string(); },
                        [](std::int64_t i) { return std::to_string(i); },
                        [](double d) {
                          char buf[32];
                          const auto r = std::to_chars(buf, buf + sizeof buf, d);
                          return std::string(buf, r.ptr);
                        },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](const std::string& s) { return s; },
                    },
                    v);
}

bool is_null(const Value& v) { return std::holds_alternative<std::monostate>(v); }

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t out = 0;
  const auto* last = s.data() + s.size();
  const auto r = std::from_chars(s.data(), last, out);
  if (r.ec != std::errc() || r.ptr != last) return std::nullopt;
  return out;
}

std::optional<double> parse_float(std::string_view s) {
  double out = 0;
  const auto* last = s.data() + s.size();
  const auto r = std::from_chars(s.data(), last, out);
  if (r.ec != std::errc() || r.ptr != last) return std::nullopt;
  return out;
}

std::string type_name(const DataType& t) { return render(t); }

Value convert(std::string_view text, bool is_bool_literal, const DataType& type) {
  const auto fail = [&] { return TypeMismatch("'" + std::string(text) + "' is not a valid " + type_name(type)); };
  switch (type.kind) {
    case DataTypeKind::Int:
      if (auto i = parse_int(text)) return *i;
      throw fail();
    case DataTypeKind::Float:
      if (auto f = parse_float(text)) return *f;
      throw fail();
    case DataTypeKind::Bool: {
      const auto lower = text::to_lower(text);
      if (lower == "true" || lower == "1") return true;
      if (lower == "false" || lower == "0") return false;
      throw fail();
    }
    case DataTypeKind::Varchar:
      if (is_bool_literal) return std::string(text);
      if (type.length && text.size() > static_cast<std::size_t>(*type.length)) {
        throw TypeMismatch("'" + std::string(text) + "' is longer than " + type_name(type));
      }
      return std::string(text);
  }
  throw fail();
}

DataType unsized(DataType t) {
  t.length.reset();
  return t;
}

// Three-way comparison; nullopt when either side is NULL or the types differ.
std::optional<int> compare(const Value& a, const Value& b) {
  if (is_null(a) || is_null(b)) return std::nullopt;
  const auto as_number = [](const Value& v) -> std::optional<double> {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&v)) return *d;
    return std::nullopt;
  };
  const auto na = as_number(a);
  const auto nb = as_number(b);
  if (na && nb) {
    if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)) {
      const auto x = std::get<std::int64_t>(a);
      const auto y = std::get<std::int64_t>(b);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  }
  if (a.index() != b.index()) return std::nullopt;
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

bool holds(CompareOp op, int c) {
  switch (op) {
    case CompareOp::Eq: return c == 0;
    case CompareOp::Ne: return c != 0;
    case CompareOp::Gt: return c > 0;
    case CompareOp::Lt: return c < 0;
    case CompareOp::Ge:
    case CompareOp::NotLt: return c >= 0;
    case CompareOp::Le:
    case CompareOp::NotGt: return c <= 0;
  }
  return false;
}

std::size_t column_of(const Table& t, std::string_view column) {
  const int i = t.def.column_index(column);
  if (i < 0) throw UnknownColumn(t.def.name, std::string(column));
  return static_cast<std::size_t>(i);
}

bool in_values(const Value& v, const std::vector<Value>& values) {
  return std::any_of(values.begin(), values.end(), [&](const Value& x) { return compare(v, x) == 0; });
}

void require_filter_columns(const Table& t, const Filter& f) {
  column_of(t, f.first.column);
  if (f.second) column_of(t, f.second->column);
}

std::vector<Row> dedupe(std::vector<Row> rows) {
  std::vector<Row> out;
  std::set<Row> seen;
  for (auto& r : rows) {
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

// Applies a projection to already filtered rows.
ExecResult project(const Table& t, const Projection& p, const std::vector<const Row*>& rows) {
  ExecResult r;
  r.kind = ResultKind::Rows;
  if (p.kind == ProjectionKind::Count) {
    const auto i = column_of(t, p.columns.at(0));
    r.header = {"COUNT(" + t.def.columns[i].name + ")"};
    const auto n = std::count_if(rows.begin(), rows.end(), [&](const Row* row) { return !is_null((*row)[i]); });
    r.rows = {Row{static_cast<std::int64_t>(n)}};
    r.count = 1;
    return r;
  }
  std::vector<std::size_t> idx;
  if (p.kind == ProjectionKind::All) {
    for (std::size_t i = 0; i < t.def.columns.size(); ++i) idx.push_back(i);
  } else {
    for (const auto& c : p.columns) idx.push_back(column_of(t, c));
  }
  for (auto i : idx) r.header.push_back(t.def.columns[i].name);
  for (const auto* row : rows) {
    Row out;
    for (auto i : idx) out.push_back((*row)[i]);
    r.rows.push_back(std::move(out));
  }
  if (p.kind == ProjectionKind::Distinct) r.rows = dedupe(std::move(r.rows));
  r.count = r.rows.size();
  return r;
}

// Groups keep the order in which their key first appears.
std::vector<std::pair<Value, std::vector<const Row*>>> group_rows(const std::vector<const Row*>& rows,
                                                                  std::size_t key) {
  std::vector<std::pair<Value, std::vector<const Row*>>> groups;
  std::map<Value, std::size_t> where;
  for (const auto* row : rows) {
    const auto [it, fresh] = where.emplace((*row)[key], groups.size());
    if (fresh) groups.push_back({(*row)[key], {}});
    groups[it->second].second.push_back(row);
  }
  return groups;
}

ExecResult grouped(const Table& t, const Projection& p, const std::vector<const Row*>& rows,
                   const std::string& group_column, const HavingCount* having) {
  const auto key = column_of(t, group_column);
  const auto groups = group_rows(rows, key);
  if (p.kind != ProjectionKind::Count) {
    std::vector<const Row*> firsts;
    for (const auto& g : groups) firsts.push_back(g.second.front());
    return project(t, p, firsts);
  }
  const auto counted = column_of(t, p.columns.at(0));
  ExecResult r;
  r.kind = ResultKind::Rows;
  r.header = {t.def.columns[key].name, "COUNT(" + t.def.columns[counted].name + ")"};
  const auto count_in = [](const std::vector<const Row*>& members, std::size_t col) {
    return static_cast<std::int64_t>(
        std::count_if(members.begin(), members.end(), [&](const Row* row) { return !is_null((*row)[col]); }));
  };
  std::optional<Value> threshold;
  std::size_t having_col = counted;
  if (having) {
    having_col = column_of(t, having->column);
    threshold = coerce(having->value, DataType{DataTypeKind::Int, std::nullopt});
  }
  for (const auto& [value, members] : groups) {
    const auto n = count_in(members, counted);
    if (threshold) {
      const auto c = compare(Value{count_in(members, having_col)}, *threshold);
      if (!c || !holds(having->op, *c)) continue;
    }
    r.rows.push_back(Row{value, n});
  }
  r.count = r.rows.size();
  return r;
}

ExecResult run_select(const Select& s, const Database& db, const std::vector<Value>* in_set = nullptr,
                      const std::string* in_column = nullptr) {
  const auto& t = db.get(s.table);
  if (s.filter) require_filter_columns(t, *s.filter);
  std::optional<std::size_t> in_idx;
  if (in_column) in_idx = column_of(t, *in_column);
  std::vector<const Row*> rows;
  for (const auto& row : t.rows) {
    if (s.filter && !matches(*s.filter, t, row)) continue;
    if (in_idx && !in_values(row[*in_idx], *in_set)) continue;
    rows.push_back(&row);
  }
  if (!s.modifier) return project(t, s.projection, rows);
  return std::visit(Overload{
                        [&](const OrderBy& o) {
                          const auto key = column_of(t, o.column);
                          std::stable_sort(rows.begin(), rows.end(), [&](const Row* a, const Row* b) {
                            const auto& x = (*a)[key];
                            const auto& y = (*b)[key];
                            if (is_null(x) || is_null(y)) {
                              return o.direction == SortDirection::Asc ? is_null(x) && !is_null(y)
                                                                       : !is_null(x) && is_null(y);
                            }
                            const auto c = compare(x, y).value_or(0);
                            return o.direction == SortDirection::Asc ? c < 0 : c > 0;
                          });
                          return project(t, s.projection, rows);
                        },
                        [&](const GroupBy& g) { return grouped(t, s.projection, rows, g.column, nullptr); },
                        [&](const HavingCount& h) { return grouped(t, s.projection, rows, h.group_column, &h); },
                    },
                    *s.modifier);
}

ExecResult affected(std::size_t n) { return ExecResult{ResultKind::Affected, {}, {}, n}; }
ExecResult simple_result(ResultKind k, std::size_t n) { return ExecResult{k, {}, {}, n}; }

void check_primary_key(const Table& t, const Row& candidate, const Row* ignore) {
  if (!t.def.primary_key) return;
  const auto k = column_of(t, *t.def.primary_key);
  if (is_null(candidate[k])) return;
  for (const auto& row : t.rows) {
    if (&row != ignore && compare(row[k], candidate[k]) == 0) {
      throw StorageError("duplicate primary key " + to_string(candidate[k]) + " in table " + t.def.name);
    }
  }
}

ExecResult run_insert(Table& t, const std::vector<std::string>& columns, const std::vector<Row>& values) {
  std::vector<std::size_t> idx;
  if (columns.empty()) {
    for (std::size_t i = 0; i < t.def.columns.size(); ++i) idx.push_back(i);
  } else {
    for (const auto& c : columns) idx.push_back(column_of(t, c));
  }
  std::vector<Row> fresh;
  for (const auto& v : values) {
    if (v.size() != idx.size()) throw StorageError("insert supplies " + std::to_string(v.size()) +
                                                   " values for " + std::to_string(idx.size()) + " columns");
    Row row(t.def.columns.size());
    for (std::size_t i = 0; i < idx.size(); ++i) row[idx[i]] = v[i];
    check_primary_key(t, row, nullptr);
    fresh.push_back(std::move(row));
  }
  for (auto& row : fresh) t.rows.push_back(std::move(row));
  return affected(values.size());
}

ExecResult run_update(Table& t, std::size_t column, const Value& v, const std::function<bool(const Row&)>& keep) {
  std::size_t n = 0;
  for (auto& row : t.rows) {
    if (!keep(row)) continue;
    Row changed = row;
    changed[column] = v;
    if (t.def.primary_key && text::iequals(*t.def.primary_key, t.def.columns[column].name)) {
      check_primary_key(t, changed, &row);
    }
    row = std::move(changed);
    ++n;
  }
  return affected(n);
}

ExecResult run_delete(Table& t, const std::function<bool(const Row&)>& kill) {
  const auto before = t.rows.size();
  t.rows.erase(std::remove_if(t.rows.begin(), t.rows.end(), kill), t.rows.end());
  return affected(before - t.rows.size());
}

Value recast(const Value& v, const DataType& type) {
  if (is_null(v)) return v;
  return convert(to_string(v), std::holds_alternative<bool>(v), type);
}

void rename_table(Database& db, const std::string& from, const std::string& to) {
  auto& t = db.get(from);
  if (!text::iequals(from, to) && db.find(to)) throw DuplicateTable(to);
  t.def.name = to;
}

}  // namespace

Value coerce(const Literal& v, const DataType& type) { return convert(v.text, v.type == LiteralType::Bool, type); }

Value parse_value(std::string_view field, const DataType& type) {
  if (field.empty()) return std::monostate{};
  return convert(field, false, type);
}

bool like_match(std::string_view value, std::string_view pattern) {
  // Iterative wildcard match with single-star backtracking.
  std::size_t v = 0, p = 0, star = std::string_view::npos, mark = 0;
  while (v < value.size()) {
    if (p < pattern.size() && (pattern[p] == '_' || pattern[p] == value[v])) {
      ++v;
      ++p;
    } else if (p < pattern.size() && pattern[p] == '%') {
      star = p++;
      mark = v;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      v = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

bool matches(const Predicate& p, const Table& t, const Row& row) {
  const auto i = column_of(t, p.column);
  const auto& cell = row[i];
  const auto type = unsized(t.def.columns[i].type);
  switch (p.kind) {
    case PredicateKind::Compare: {
      const auto c = compare(cell, coerce(p.values.at(0), type));
      return c && holds(p.op, *c);
    }
    case PredicateKind::In:
      return std::any_of(p.values.begin(), p.values.end(),
                         [&](const Literal& v) { return compare(cell, coerce(v, type)) == 0; });
    case PredicateKind::Between: {
      const auto lo = compare(cell, coerce(p.values.at(0), type));
      const auto hi = compare(cell, coerce(p.values.at(1), type));
      return lo && hi && *lo >= 0 && *hi <= 0;
    }
    case PredicateKind::Like:
      return !is_null(cell) && like_match(to_string(cell), p.values.at(0).text);
  }
  return false;
}

bool matches(const Filter& f, const Table& t, const Row& row) {
  const bool a = matches(f.first, t, row);
  if (f.negated) return !a;
  if (!f.conjunction) return a;
  const bool b = matches(*f.second, t, row);
  return *f.conjunction == Conjunction::And ? a && b : a || b;
}

Database::Database(const Schema& schema) {
  for (const auto& def : schema.tables()) tables_.push_back(Table{def, {}});
}

Table* Database::find(std::string_view name) {
  for (auto& t : tables_) {
    if (text::iequals(t.def.name, name)) return &t;
  }
  return nullptr;
}

const Table* Database::find(std::string_view name) const { return const_cast<Database*>(this)->find(name); }

Table& Database::get(std::string_view name) {
  if (auto* t = find(name)) return *t;
  throw UnknownTable(std::string(name));
}

const Table& Database::get(std::string_view name) const { return const_cast<Database*>(this)->get(name); }

Schema Database::schema() const {
  Schema s;
  for (const auto& t : tables_) s.add_table(t.def);
  return s;
}

ExecResult execute(const SqlStatement& stmt, Database& db) {
  return std::visit(
      Overload{
          [&](const CreateDatabase& s) {
            const auto name = text::to_lower(s.name);
            if (!db.databases().insert(name).second && !s.if_not_exists) {
              throw StorageError("database " + s.name + " already exists");
            }
            return simple_result(ResultKind::Created, 1);
          },
          [&](const CreateTable& s) {
            if (db.find(s.name)) {
              if (s.if_not_exists) return simple_result(ResultKind::Created, 0);
              throw DuplicateTable(s.name);
            }
            TableDef def{s.name, s.columns, std::nullopt};
            Schema check;
            try {
              check.add_table(def);
            } catch (const std::invalid_argument& e) {
              throw StorageError(e.what());
            }
            db.tables().push_back(Table{std::move(def), {}});
            return simple_result(ResultKind::Created, 1);
          },
          [&](const AlterRename& s) {
            rename_table(db, s.table, s.new_name);
            return simple_result(ResultKind::Altered, 1);
          },
          [&](const AlterColumn& s) {
            auto& t = db.get(s.table);
            const int i = t.def.column_index(s.column.name);
            switch (s.action) {
              case AlterAction::Add:
                if (i >= 0) throw StorageError("column " + s.column.name + " already exists in " + t.def.name);
                t.def.columns.push_back(s.column);
                for (auto& row : t.rows) row.emplace_back();
                break;
              case AlterAction::Drop: {
                const auto k = column_of(t, s.column.name);
                if (t.def.primary_key && text::iequals(*t.def.primary_key, s.column.name)) t.def.primary_key.reset();
                t.def.columns.erase(t.def.columns.begin() + static_cast<std::ptrdiff_t>(k));
                for (auto& row : t.rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(k));
                break;
              }
              case AlterAction::Modify: {
                const auto k = column_of(t, s.column.name);
                std::vector<Value> converted;
                for (const auto& row : t.rows) converted.push_back(recast(row[k], s.column.type));
                t.def.columns[k].type = s.column.type;
                for (std::size_t r = 0; r < t.rows.size(); ++r) t.rows[r][k] = std::move(converted[r]);
                break;
              }
            }
            return simple_result(ResultKind::Altered, 1);
          },
          [&](const DropDatabase& s) {
            std::size_t n = 0;
            for (const auto& name : s.names) {
              if (db.databases().erase(text::to_lower(name))) {
                ++n;
              } else if (!s.if_exists) {
                throw StorageError("unknown database " + name);
              }
            }
            return simple_result(ResultKind::Dropped, n);
          },
          [&](const DropTable& s) {
            if (!s.if_exists) {
              for (const auto& name : s.names) db.get(name);
            }
            std::size_t n = 0;
            for (const auto& name : s.names) {
              auto& ts = db.tables();
              const auto it = std::find_if(ts.begin(), ts.end(),
                                           [&](const Table& t) { return text::iequals(t.def.name, name); });
              if (it != ts.end()) {
                ts.erase(it);
                ++n;
              }
            }
            return simple_result(ResultKind::Dropped, n);
          },
          [&](const RenameTable& s) {
            rename_table(db, s.from, s.to);
            return simple_result(ResultKind::Altered, 1);
          },
          [&](const Truncate& s) {
            auto& t = db.get(s.table);
            const auto n = t.rows.size();
            t.rows.clear();
            return affected(n);
          },
          [&](const Delete& s) {
            auto& t = db.get(s.table);
            require_filter_columns(t, s.filter);
            return run_delete(t, [&](const Row& row) { return matches(s.filter, t, row); });
          },
          [&](const Insert& s) {
            auto& t = db.get(s.table);
            std::vector<std::size_t> idx;
            for (const auto& c : s.columns) idx.push_back(column_of(t, c));
            if (s.columns.empty() && s.values.size() != t.def.columns.size()) {
              throw StorageError("insert supplies " + std::to_string(s.values.size()) + " values for " +
                                 std::to_string(t.def.columns.size()) + " columns");
            }
            Row values;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
              const auto k = s.columns.empty() ? i : idx.at(i);
              values.push_back(coerce(s.values[i], t.def.columns.at(k).type));
            }
            return run_insert(t, s.columns, {values});
          },
          [&](const Update& s) {
            auto& t = db.get(s.table);
            const auto k = column_of(t, s.column);
            if (s.filter) require_filter_columns(t, *s.filter);
            const auto v = coerce(s.value, t.def.columns[k].type);
            return run_update(t, k, v, [&](const Row& row) { return !s.filter || matches(*s.filter, t, row); });
          },
          [&](const Select& s) { return run_select(s, db); },
      },
      stmt);
}

namespace {

// Phase one of nested execution: the inner query's rows.
ExecResult inner_rows(const SelectSub& q, const Database& db) {
  Select s{q.projection, q.table, std::nullopt, std::nullopt};
  if (q.condition) s.filter = Filter{false, *q.condition, std::nullopt, std::nullopt};
  return run_select(s, db);
}

std::vector<Value> inner_values(const SelectSub& q, const Database& db) {
  auto r = inner_rows(q, db);
  if (r.header.size() != 1) {
    throw StorageError("inner query returns " + std::to_string(r.header.size()) + " columns where one is needed");
  }
  std::vector<Value> out;
  for (auto& row : r.rows) out.push_back(std::move(row[0]));
  return out;
}

}  // namespace

ExecResult execute(const NestedQuery& query, Database& db) {
  return std::visit(
      Overload{
          [&](const UpdateSub& q) {
            const auto values = inner_values(q.inner, db);
            auto& t = db.get(q.table);
            const auto k = column_of(t, q.set_column);
            const auto in = column_of(t, q.in_column);
            if (q.set_op != CompareOp::Eq) {
              throw StorageError("SET with " + std::string(symbol(q.set_op)) + " cannot be executed");
            }
            const auto v = coerce(q.set_value, t.def.columns[k].type);
            return run_update(t, k, v, [&](const Row& row) { return in_values(row[in], values); });
          },
          [&](const DeleteSub& q) {
            const auto values = inner_values(q.inner, db);
            auto& t = db.get(q.table);
            const auto k = column_of(t, q.where_column);
            if (q.op == "IN") {
              return run_delete(t, [&](const Row& row) { return in_values(row[k], values); });
            }
            const auto op = parse_compare_op(q.op);
            if (!op && q.op != "LIKE") throw StorageError("operator " + q.op + " cannot be applied to a subquery");
            if (values.size() > 1) throw StorageError("subquery returns more than one row");
            if (values.empty()) return affected(0);
            const auto& scalar = values.front();
            if (!op) {
              return run_delete(t, [&](const Row& row) {
                return !is_null(row[k]) && !is_null(scalar) && like_match(to_string(row[k]), to_string(scalar));
              });
            }
            return run_delete(t, [&](const Row& row) {
              const auto c = compare(row[k], scalar);
              return c && holds(*op, *c);
            });
          },
          [&](const InsertSub& q) {
            auto r = inner_rows(q.inner, db);
            auto& t = db.get(q.table);
            std::vector<std::size_t> idx;
            for (const auto& c : q.columns) idx.push_back(column_of(t, c));
            for (auto& row : r.rows) {
              if (row.size() != idx.size()) {
                throw StorageError("inner query returns " + std::to_string(row.size()) + " columns for " +
                                   std::to_string(idx.size()) + " target columns");
              }
              for (std::size_t i = 0; i < row.size(); ++i) row[i] = recast(row[i], t.def.columns[idx[i]].type);
            }
            return run_insert(t, q.columns, r.rows);
          },
          [&](const SelectSubQ& q) {
            const auto values = inner_values(q.inner, db);
            const Select outer{q.projection, q.table, std::nullopt, std::nullopt};
            return run_select(outer, db, &values, &q.in_column);
          },
      },
      query);
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return fields;
}

void seed(Database& db, const std::filesystem::path& dir) {
  for (auto& t : db.tables()) {
    const auto file = dir / (text::to_lower(t.def.name) + ".csv");
    std::ifstream in(file);
    if (!in) continue;
    const auto where = [&](std::size_t line) { return file.string() + ":" + std::to_string(line) + ": "; };
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) continue;
    std::vector<std::size_t> idx;
    try {
      for (const auto& name : parse_csv_line(line)) idx.push_back(column_of(t, text::trim(name)));
    } catch (const std::exception& e) {
      throw FixtureTypeError(where(line_no) + e.what());
    }
    while (std::getline(in, line)) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      Row row(t.def.columns.size());
      try {
        const auto fields = parse_csv_line(line);
        if (fields.size() != idx.size()) throw StorageError("expected " + std::to_string(idx.size()) + " fields");
        for (std::size_t i = 0; i < idx.size(); ++i) row[idx[i]] = parse_value(fields[i], t.def.columns[idx[i]].type);
        check_primary_key(t, row, nullptr);
      } catch (const std::exception& e) {
        throw FixtureTypeError(where(line_no) + e.what());
      }
      t.rows.push_back(std::move(row));
    }
  }
}

Database load_database(const std::filesystem::path& schema_file, const std::filesystem::path& fixture_dir) {
  Database db(Schema::load(schema_file));
  seed(db, fixture_dir);
  return db;
}

void write_csv(const Table& t, std::ostream& out) {
  const auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos && text::trim(s) == s) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  std::vector<std::string> header;
  for (const auto& c : t.def.columns) header.push_back(field(c.name));
  out << text::join(header, ",") << '\n';
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(field(to_string(v)));
    out << text::join(cells, ",") << '\n';
  }
}

void dump(const Database& db, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& t : db.tables()) {
    std::ofstream out(dir / (text::to_lower(t.def.name) + ".csv"));
    if (!out) throw StorageError("cannot write to " + dir.string());
    write_csv(t, out);
  }
}

}  // namespace narsql
