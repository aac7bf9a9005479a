#include "narsql/ast.hpp"

#include <utility>

#include "narsql/text.hpp"
#include "overload.hpp"

namespace narsql {
namespace {

std::string list(const std::vector<std::string>& names) { return text::join(names, ", "); }

std::string render_values(const std::vector<Literal>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (const auto& v : values) parts.push_back(render(v));
  return list(parts);
}

std::string render_column_def(const ColumnDef& c) { return c.name + " " + render(c.type); }

std::string if_exists(bool flag) { return flag ? "IF EXISTS " : ""; }
std::string if_not_exists(bool flag) { return flag ? "IF NOT EXISTS " : ""; }

std::string render_modifier(const Modifier& m) {
  return std::visit(
      Overload{
          [](const OrderBy& o) {
            return "ORDER BY " + o.column + (o.direction == SortDirection::Asc ? " ASC" : " DESC");
          },
          [](const GroupBy& g) { return "GROUP BY " + g.column; },
          [](const HavingCount& h) {
            return "GROUP BY " + h.group_column + " HAVING COUNT(" + h.column + ") " +
                   std::string(symbol(h.op)) + " " + render(h.value);
          },
      },
      m);
}

void push_literals(std::vector<std::string>& out, const std::vector<Literal>& values) {
  for (const auto& v : values) out.push_back(v.text);
}

void push_predicate(std::vector<std::string>& out, const Predicate& p) {
  out.push_back(p.column);
  push_literals(out, p.values);
}

void push_filter(std::vector<std::string>& out, const Filter& f) {
  push_predicate(out, f.first);
  if (f.second) push_predicate(out, *f.second);
}

void push_projection(std::vector<std::string>& out, const Projection& p) {
  out.insert(out.end(), p.columns.begin(), p.columns.end());
}

void push_select_sub(std::vector<std::string>& out, const SelectSub& s) {
  push_projection(out, s.projection);
  out.push_back(s.table);
  if (s.condition) push_predicate(out, *s.condition);
}

}  // namespace

std::string_view symbol(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Gt: return ">";
    case CompareOp::Lt: return "<";
    case CompareOp::Ge: return ">=";
    case CompareOp::Le: return "<=";
    case CompareOp::NotLt: return "!<";
    case CompareOp::NotGt: return "!>";
  }
  return "=";
}

std::optional<CompareOp> parse_compare_op(std::string_view sym) {
  if (sym == "=") return CompareOp::Eq;
  if (sym == "!=" || sym == "<>") return CompareOp::Ne;
  if (sym == ">") return CompareOp::Gt;
  if (sym == "<") return CompareOp::Lt;
  if (sym == ">=") return CompareOp::Ge;
  if (sym == "<=") return CompareOp::Le;
  if (sym == "!<") return CompareOp::NotLt;
  if (sym == "!>") return CompareOp::NotGt;
  return std::nullopt;
}

bool is_numeric(const Literal& v) {
  return v.type == LiteralType::Int || v.type == LiteralType::Float;
}

std::string render(const Literal& v) {
  if (v.type != LiteralType::Varchar) return v.text;
  const char quote = v.text.find('\'') == std::string::npos ? '\'' : '"';
  return quote + v.text + quote;
}

std::string render(const DataType& t) {
  switch (t.kind) {
    case DataTypeKind::Int: return "INT";
    case DataTypeKind::Bool: return "BOOL";
    case DataTypeKind::Float: return "FLOAT";
    case DataTypeKind::Varchar:
      return t.length ? "VARCHAR(" + std::to_string(*t.length) + ")" : "VARCHAR";
  }
  return "INT";
}

std::string render(const Predicate& p) {
  switch (p.kind) {
    case PredicateKind::Compare:
      return p.column + " " + std::string(symbol(p.op)) + " " + render(p.values.at(0));
    case PredicateKind::Like:
      return p.column + " LIKE " + render(p.values.at(0));
    case PredicateKind::Between:
      return p.column + " BETWEEN " + render(p.values.at(0)) + " AND " + render(p.values.at(1));
    case PredicateKind::In:
      return p.column + " IN (" + render_values(p.values) + ")";
  }
  return {};
}

std::string render(const Filter& f) {
  std::string out = f.negated ? "NOT " : "";
  out += render(f.first);
  if (f.conjunction && f.second) {
    out += *f.conjunction == Conjunction::And ? " AND " : " OR ";
    out += render(*f.second);
  }
  return out;
}

std::string render(const Projection& p) {
  switch (p.kind) {
    case ProjectionKind::All: return "*";
    case ProjectionKind::Columns: return list(p.columns);
    case ProjectionKind::Distinct: return "DISTINCT " + list(p.columns);
    case ProjectionKind::Count: return "COUNT(" + p.columns.at(0) + ")";
  }
  return "*";
}

std::string render(const SqlStatement& s) {
  const std::string body = std::visit(
      Overload{
          [](const CreateDatabase& c) {
            return "CREATE DATABASE " + if_not_exists(c.if_not_exists) + c.name;
          },
          [](const CreateTable& c) {
            std::vector<std::string> cols;
            for (const auto& col : c.columns) cols.push_back(render_column_def(col));
            return "CREATE TABLE " + if_not_exists(c.if_not_exists) + c.name + " (" + list(cols) + ")";
          },
          [](const AlterRename& a) { return "ALTER TABLE " + a.table + " RENAME TO " + a.new_name; },
          [](const AlterColumn& a) {
            const char* verb = a.action == AlterAction::Add    ? "ADD"
                               : a.action == AlterAction::Drop ? "DROP"
                                                               : "MODIFY";
            return "ALTER TABLE " + a.table + " " + verb + " COLUMN " + render_column_def(a.column);
          },
          [](const DropDatabase& d) { return "DROP DATABASE " + if_exists(d.if_exists) + list(d.names); },
          [](const DropTable& d) { return "DROP TABLE " + if_exists(d.if_exists) + list(d.names); },
          [](const RenameTable& r) { return "RENAME TABLE " + r.from + " TO " + r.to; },
          [](const Truncate& t) { return "TRUNCATE TABLE " + t.table; },
          [](const Delete& d) { return "DELETE FROM " + d.table + " WHERE " + render(d.filter); },
          [](const Insert& i) {
            return "INSERT INTO " + i.table + " (" + list(i.columns) + ") VALUES (" +
                   render_values(i.values) + ")";
          },
          [](const Update& u) {
            std::string out = "UPDATE " + u.table + " SET " + u.column + " = " + render(u.value);
            if (u.filter) out += " WHERE " + render(*u.filter);
            return out;
          },
          [](const Select& q) {
            std::string out = "SELECT " + render(q.projection) + " FROM " + q.table;
            if (q.filter) out += " WHERE " + render(*q.filter);
            if (q.modifier) out += " " + render_modifier(*q.modifier);
            return out;
          },
      },
      s);
  return body + ";";
}

std::string render(const SelectSub& s) {
  std::string out = "SELECT " + render(s.projection) + " FROM " + s.table;
  if (s.condition) out += " WHERE " + render(*s.condition);
  return out;
}

std::string render(const NestedQuery& q) {
  return std::visit(
      Overload{
          [](const UpdateSub& u) {
            return "UPDATE " + u.table + " SET " + u.set_column + " " + std::string(symbol(u.set_op)) +
                   " " + render(u.set_value) + " WHERE " + u.in_column + " IN (" + render(u.inner) + ");";
          },
          [](const DeleteSub& d) {
            return "DELETE FROM " + d.table + " WHERE " + d.where_column + " " + d.op + " (" +
                   render(d.inner) + ");";
          },
          [](const InsertSub& i) {
            return "INSERT INTO " + i.table + " (" + list(i.columns) + ") (" + render(i.inner) + ");";
          },
          [](const SelectSubQ& s) {
            return "SELECT " + render(s.projection) + " FROM " + s.table + " WHERE " + s.in_column +
                   " IN (" + render(s.inner) + ");";
          },
      },
      q);
}

std::vector<std::string> mentioned_names(const SqlStatement& s) {
  std::vector<std::string> out;
  std::visit(Overload{
                 [&](const CreateDatabase& c) { out.push_back(c.name); },
                 [&](const CreateTable& c) {
                   out.push_back(c.name);
                   for (const auto& col : c.columns) {
                     out.push_back(col.name);
                     if (col.type.length) out.push_back(std::to_string(*col.type.length));
                   }
                 },
                 [&](const AlterRename& a) {
                   out.push_back(a.table);
                   out.push_back(a.new_name);
                 },
                 [&](const AlterColumn& a) {
                   out.push_back(a.table);
                   out.push_back(a.column.name);
                   if (a.column.type.length) out.push_back(std::to_string(*a.column.type.length));
                 },
                 [&](const DropDatabase& d) { out.insert(out.end(), d.names.begin(), d.names.end()); },
                 [&](const DropTable& d) { out.insert(out.end(), d.names.begin(), d.names.end()); },
                 [&](const RenameTable& r) {
                   out.push_back(r.from);
                   out.push_back(r.to);
                 },
                 [&](const Truncate& t) { out.push_back(t.table); },
                 [&](const Delete& d) {
                   out.push_back(d.table);
                   push_filter(out, d.filter);
                 },
                 [&](const Insert& i) {
                   out.push_back(i.table);
                   out.insert(out.end(), i.columns.begin(), i.columns.end());
                   push_literals(out, i.values);
                 },
                 [&](const Update& u) {
                   out.push_back(u.table);
                   out.push_back(u.column);
                   out.push_back(u.value.text);
                   if (u.filter) push_filter(out, *u.filter);
                 },
                 [&](const Select& q) {
                   push_projection(out, q.projection);
                   out.push_back(q.table);
                   if (q.filter) push_filter(out, *q.filter);
                   if (q.modifier) {
                     std::visit(Overload{
                                    [&](const OrderBy& o) { out.push_back(o.column); },
                                    [&](const GroupBy& g) { out.push_back(g.column); },
                                    [&](const HavingCount& h) {
                                      out.push_back(h.group_column);
                                      out.push_back(h.column);
                                      out.push_back(h.value.text);
                                    },
                                },
                                *q.modifier);
                   }
                 },
             },
             s);
  return out;
}

std::vector<std::string> mentioned_names(const NestedQuery& q) {
  std::vector<std::string> out;
  std::visit(Overload{
                 [&](const UpdateSub& u) {
                   out.push_back(u.table);
                   out.push_back(u.set_column);
                   out.push_back(u.set_value.text);
                   out.push_back(u.in_column);
                 },
                 [&](const DeleteSub& d) {
                   out.push_back(d.table);
                   out.push_back(d.where_column);
                 },
                 [&](const InsertSub& i) {
                   out.push_back(i.table);
                   out.insert(out.end(), i.columns.begin(), i.columns.end());
                 },
                 [&](const SelectSubQ& s) {
                   push_projection(out, s.projection);
                   out.push_back(s.table);
                   out.push_back(s.in_column);
                 },
             },
             q);
  push_select_sub(out, inner_of(q));
  return out;
}

const SelectSub& inner_of(const NestedQuery& q) {
  return std::visit([](const auto& v) -> const SelectSub& { return v.inner; }, q);
}

const std::string& table_of(const SqlStatement& s) {
  return std::visit(Overload{
                        [](const CreateDatabase& c) -> const std::string& { return c.name; },
                        [](const CreateTable& c) -> const std::string& { return c.name; },
                        [](const AlterRename& a) -> const std::string& { return a.table; },
                        [](const AlterColumn& a) -> const std::string& { return a.table; },
                        [](const DropDatabase& d) -> const std::string& { return d.names.at(0); },
                        [](const DropTable& d) -> const std::string& { return d.names.at(0); },
                        [](const RenameTable& r) -> const std::string& { return r.from; },
                        [](const Truncate& t) -> const std::string& { return t.table; },
                        [](const Delete& d) -> const std::string& { return d.table; },
                        [](const Insert& i) -> const std::string& { return i.table; },
                        [](const Update& u) -> const std::string& { return u.table; },
                        [](const Select& q) -> const std::string& { return q.table; },
                    },
                    s);
}

}  // namespace narsql
