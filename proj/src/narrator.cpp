#include "narsql/narrator.hpp"

#include "narsql/lexer.hpp"
#include "narsql/text.hpp"
#include "overload.hpp"

namespace narsql {
namespace {

const std::vector<std::string> kCompareSymbols = {"=", "!=", ">", "<", ">=", "<=", "!<", "!>"};
const std::vector<std::string> kLinkOps = {"IN",  "NOT", "ANY", "EXISTS", "LIKE",   "BETWEEN",
                                           "AND", "OR",  "XOR", "UNIQUE", "IS NULL"};

std::string value_text(const Literal& v, bool quoted) {
  if (quoted && v.type == LiteralType::Varchar) return "'" + v.text + "'";
  return v.text;
}

std::vector<std::string> value_texts(const std::vector<Literal>& values, bool quoted) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(value_text(v, quoted));
  return out;
}

std::vector<std::string> lexemes_of(const std::string& sql) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(sql)) out.push_back(t.lexeme);
  return out;
}

bool single_column(const Projection& p, const std::string& column) {
  return p.kind != ProjectionKind::All && p.columns.size() == 1 && text::iequals(p.columns[0], column);
}

// Wording helpers bound to one vocabulary.
class Phrases {
 public:
  explicit Phrases(const Vocabulary& v) : v_(v) {}

  std::string op(CompareOp op) const { return v_.get("op." + std::string(symbol(op))); }
  std::string relop(CompareOp op) const { return v_.get("relop." + std::string(symbol(op))); }

  std::string predicate(const Predicate& p, bool quoted) const {
    switch (p.kind) {
      case PredicateKind::Compare:
        return v_.fill("predicate.compare",
                       {{"column", p.column}, {"op", op(p.op)}, {"value", value_text(p.values.at(0), quoted)}});
      case PredicateKind::In:
        return v_.fill(p.values.size() == 1 ? "predicate.in_single" : "predicate.in",
                       {{"column", p.column}, {"values", text::join(value_texts(p.values, quoted), ", ")}});
      case PredicateKind::Between:
        return v_.fill("predicate.between", {{"column", p.column},
                                             {"low", value_text(p.values.at(0), quoted)},
                                             {"high", value_text(p.values.at(1), quoted)}});
      case PredicateKind::Like:
        return v_.fill("predicate.like", {{"column", p.column}, {"value", value_text(p.values.at(0), quoted)}});
    }
    return {};
  }

  std::string filter(const Filter& f, bool quoted) const {
    const std::string first = predicate(f.first, quoted);
    if (f.negated) return v_.fill("filter.negated", {{"first", first}});
    if (!f.conjunction || !f.second) return v_.fill("filter.single", {{"first", first}});
    const char* key = *f.conjunction == Conjunction::And ? "filter.and" : "filter.or";
    return v_.fill(key, {{"first", first}, {"second", predicate(*f.second, quoted)}});
  }

  std::string column_type(const DataType& t, const std::string& prefix) const {
    switch (t.kind) {
      case DataTypeKind::Int: return v_.get(prefix + "int");
      case DataTypeKind::Bool: return v_.get(prefix + "bool");
      case DataTypeKind::Float: return v_.get(prefix + "float");
      case DataTypeKind::Varchar:
        if (!t.length) return v_.get(prefix + "varchar_unsized");
        return v_.fill(prefix + "varchar", {{"n", std::to_string(*t.length)}});
    }
    return {};
  }

  std::string modifier(const Modifier& m) const {
    return std::visit(
        Overload{
            [&](const OrderBy& o) {
              return v_.fill(o.direction == SortDirection::Asc ? "modifier.order.ASC" : "modifier.order.DESC",
                             {{"column", o.column}});
            },
            [&](const GroupBy& g) { return v_.fill("modifier.group", {{"column", g.column}}); },
            [&](const HavingCount& h) {
              return v_.fill("modifier.having", {{"group", h.group_column},
                                                  {"column", h.column},
                                                  {"op", op(h.op)},
                                                  {"value", value_text(h.value, true)}});
            },
        },
        m);
  }

  std::string select_projection(const Select& s) const {
    const auto& p = s.projection;
    switch (p.kind) {
      case ProjectionKind::All:
        if (!s.filter) return v_.get("select.all");
        if (s.filter->conjunction == Conjunction::And) return v_.get("select.all_and");
        return v_.get("select.all_filtered");
      case ProjectionKind::Columns: return v_.fill("select.columns", {{"columns", text::join_and(p.columns)}});
      case ProjectionKind::Distinct: return v_.fill("select.distinct", {{"columns", text::join_and(p.columns)}});
      case ProjectionKind::Count: return v_.fill("select.count", {{"column", p.columns.at(0)}});
    }
    return {};
  }

  std::string inner_projection(const Projection& p, bool gets) const {
    switch (p.kind) {
      case ProjectionKind::Columns:
        return v_.fill(gets ? "inner.gets_projection.columns" : "inner.projection.columns",
                       {{"columns", text::join_and(p.columns)}});
      case ProjectionKind::Distinct:
        return v_.fill("inner.projection.distinct", {{"columns", text::join_and(p.columns)}});
      case ProjectionKind::All:
      case ProjectionKind::Count:
        return v_.get("inner.projection.all");
    }
    return {};
  }

  // "displays the city information from the country table where ..."
  std::string inner_clause(const SelectSub& s) const {
    std::string condition;
    if (s.condition) {
      condition = " " + v_.fill("inner.condition", {{"column", s.condition->column},
                                                   {"op", relop(s.condition->op)},
                                                   {"value", value_text(s.condition->values.at(0), false)}});
    }
    return v_.fill("inner.clause",
                   {{"projection", inner_projection(s.projection, false)}, {"table", s.table}, {"condition", condition}});
  }

  // "gets all the city information that has a city equal to ..."
  std::string inner_gets(const SelectSub& s, const std::string& outer_table) const {
    std::string condition;
    if (s.condition) {
      condition = " " + v_.fill("inner.gets_condition", {{"column", s.condition->column},
                                                        {"op", relop(s.condition->op)},
                                                        {"value", value_text(s.condition->values.at(0), false)}});
    }
    const bool same_table = text::iequals(s.table, outer_table);
    return v_.fill(same_table ? "inner.gets" : "inner.gets.other_table",
                   {{"projection", inner_projection(s.projection, true)}, {"table", s.table}, {"condition", condition}});
  }

  std::string link(const std::string& op) const { return v_.get("link." + op); }
  std::string cojoined_link(const std::string& op) const {
    const std::string key = "cj_link." + op;
    return v_.contains(key) ? v_.get(key) : link(op);
  }

  std::string set_clause(const UpdateSub& u) const {
    if (u.set_op == CompareOp::Eq) {
      return v_.fill("set.eq", {{"column", u.set_column}, {"value", value_text(u.set_value, false)}});
    }
    return v_.fill("set.op",
                   {{"column", u.set_column}, {"op", relop(u.set_op)}, {"value", value_text(u.set_value, false)}});
  }

 private:
  const Vocabulary& v_;
};

}  // namespace

std::string_view to_string(NarrationStyle style) {
  switch (style) {
    case NarrationStyle::Simple: return "simple";
    case NarrationStyle::OuterToInner: return "outer-to-inner";
    case NarrationStyle::InnerToOuter: return "inner-to-outer";
    case NarrationStyle::CoJoined: return "co-joined";
  }
  return "simple";
}

const std::vector<std::string>& Narrator::required_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = {
        "type.int", "type.varchar", "type.varchar_unsized", "type.bool", "type.float",
        "alter_type.int", "alter_type.varchar", "alter_type.varchar_unsized", "alter_type.bool", "alter_type.float",
        "alter_action.ADD", "alter_action.DROP", "alter_action.MODIFY",
        "create_database", "create_database.if_not_exists", "create_table", "create_table.if_not_exists",
        "create_table.column", "alter_column", "alter_rename", "drop", "drop.if_exists",
        "noun.database", "noun.databases", "noun.table", "noun.tables", "rename_table", "truncate",
        "delete", "insert", "update", "update.filtered",
        "select", "select.all", "select.all_and", "select.all_filtered", "select.distinct",
        "select.columns", "select.count",
        "filter.single", "filter.and", "filter.or", "filter.negated",
        "predicate.compare", "predicate.in", "predicate.in_single", "predicate.between", "predicate.like",
        "modifier.order.ASC", "modifier.order.DESC", "modifier.group", "modifier.having",
        "inner.clause", "inner.condition", "inner.gets", "inner.gets.other_table", "inner.gets_condition", "inner.projection.columns",
        "inner.gets_projection.columns", "inner.projection.all", "inner.projection.distinct",
        "o2i.delete", "o2i.delete.link", "o2i.update", "o2i.insert", "o2i.select",
        "i2o.delete", "i2o.update", "i2o.insert", "i2o.select",
        "cj.delete", "cj.update", "cj.insert", "cj.select", "set.eq", "set.op",
    };
    for (const auto& sym : kCompareSymbols) {
      k.push_back("op." + sym);
      k.push_back("relop." + sym);
      k.push_back("link." + sym);
    }
    for (const auto& op : kLinkOps) k.push_back("link." + op);
    return k;
  }();
  return keys;
}

Narrator::Narrator(const Vocabulary& vocabulary) : vocab_(vocabulary) { vocab_.require(required_keys()); }

std::string Narrator::simple_text(const SqlStatement& s) const {
  const Phrases ph(vocab_);
  const auto& v = vocab_;
  return std::visit(
      Overload{
          [&](const CreateDatabase& c) {
            return v.fill(c.if_not_exists ? "create_database.if_not_exists" : "create_database", {{"name", c.name}});
          },
          [&](const CreateTable& c) {
            std::vector<std::string> cols;
            for (const auto& col : c.columns) {
              cols.push_back(v.fill("create_table.column", {{"column", col.name}, {"type", ph.column_type(col.type, "type.")}}));
            }
            return v.fill(c.if_not_exists ? "create_table.if_not_exists" : "create_table",
                          {{"name", c.name}, {"columns", text::join(cols, ", ")}});
          },
          [&](const AlterRename& a) {
            return v.fill("alter_rename", {{"table", a.table}, {"new_name", a.new_name}});
          },
          [&](const AlterColumn& a) {
            const char* action = a.action == AlterAction::Add    ? "alter_action.ADD"
                                 : a.action == AlterAction::Drop ? "alter_action.DROP"
                                                                 : "alter_action.MODIFY";
            return v.fill("alter_column", {{"table", a.table},
                                           {"action", v.get(action)},
                                           {"column", a.column.name},
                                           {"type", ph.column_type(a.column.type, "alter_type.")}});
          },
          [&](const DropDatabase& d) {
            return v.fill(d.if_exists ? "drop.if_exists" : "drop",
                          {{"names", text::join_and(d.names)},
                           {"noun", v.get(d.names.size() == 1 ? "noun.database" : "noun.databases")}});
          },
          [&](const DropTable& d) {
            return v.fill(d.if_exists ? "drop.if_exists" : "drop",
                          {{"names", text::join_and(d.names)},
                           {"noun", v.get(d.names.size() == 1 ? "noun.table" : "noun.tables")}});
          },
          [&](const RenameTable& r) { return v.fill("rename_table", {{"from", r.from}, {"to", r.to}}); },
          [&](const Truncate& t) { return v.fill("truncate", {{"table", t.table}}); },
          [&](const Delete& d) {
            return v.fill("delete", {{"table", d.table}, {"filter", ph.filter(d.filter, false)}});
          },
          [&](const Insert& i) {
            return v.fill("insert", {{"table", i.table},
                                     {"columns", text::join(i.columns, ", ")},
                                     {"values", text::join(value_texts(i.values, false), ", ")}});
          },
          [&](const Update& u) {
            TemplateArgs args{{"column", u.column}, {"value", value_text(u.value, false)}, {"table", u.table}};
            if (!u.filter) return v.fill("update", args);
            args["filter"] = ph.filter(*u.filter, false);
            return v.fill("update.filtered", args);
          },
          [&](const Select& q) {
            std::string out = v.fill("select", {{"projection", ph.select_projection(q)}, {"table", q.table}});
            if (q.filter) out += " " + ph.filter(*q.filter, true);
            if (q.modifier) out += ", " + ph.modifier(*q.modifier);
            return out;
          },
      },
      s);
}

std::string Narrator::nested_text(const NestedQuery& q, NarrationStyle style) const {
  const Phrases ph(vocab_);
  const auto& v = vocab_;
  const char* prefix = style == NarrationStyle::OuterToInner   ? "o2i."
                       : style == NarrationStyle::InnerToOuter ? "i2o."
                                                               : "cj.";
  const SelectSub& inner = inner_of(q);
  const std::string outer_table = std::visit([](const auto& n) { return n.table; }, q);
  const std::string inner_text =
      style == NarrationStyle::InnerToOuter ? ph.inner_gets(inner, outer_table) : ph.inner_clause(inner);
  const auto link_for = [&](const std::string& op) {
    return style == NarrationStyle::CoJoined ? ph.cojoined_link(op) : ph.link(op);
  };

  return std::visit(
      Overload{
          [&](const DeleteSub& d) {
            TemplateArgs args{{"inner", inner_text}, {"table", d.table}, {"column", d.where_column},
                              {"link", link_for(d.op)}};
            std::string key = std::string(prefix) + "delete";
            if (style == NarrationStyle::OuterToInner && !(d.op == "IN" && single_column(inner.projection, d.where_column))) {
              key += ".link";
            }
            return v.fill(key, args);
          },
          [&](const UpdateSub& u) {
            return v.fill(std::string(prefix) + "update", {{"inner", inner_text},
                                                           {"set", ph.set_clause(u)},
                                                           {"table", u.table},
                                                           {"column", u.in_column},
                                                           {"link", link_for("IN")}});
          },
          [&](const InsertSub& i) {
            return v.fill(std::string(prefix) + "insert",
                          {{"inner", inner_text}, {"table", i.table}, {"columns", text::join_and(i.columns)}});
          },
          [&](const SelectSubQ& s) {
            return v.fill(std::string(prefix) + "select", {{"inner", inner_text},
                                                           {"projection", ph.inner_projection(s.projection, false)},
                                                           {"table", s.table},
                                                           {"column", s.in_column},
                                                           {"link", link_for("IN")}});
          },
      },
      q);
}

std::string Narrator::describe_filter(const Filter& f) const { return Phrases(vocab_).filter(f, false); }

Narration Narrator::narrate(const SqlStatement& s) const {
  return Narration{NarrationStyle::Simple, simple_text(s), lexemes_of(render(s))};
}

Narration Narrator::narrate(const NestedQuery& q, NarrationStyle style) const {
  if (style == NarrationStyle::Simple) throw std::invalid_argument("nested queries need a nested narration style");
  return Narration{style, nested_text(q, style), lexemes_of(render(q))};
}

std::vector<Narration> Narrator::narrate_all(const NestedQuery& q) const {
  return {narrate(q, NarrationStyle::OuterToInner), narrate(q, NarrationStyle::InnerToOuter),
          narrate(q, NarrationStyle::CoJoined)};
}

namespace {
const Narrator& default_narrator() {
  static const Narrator n;
  return n;
}
}  // namespace

Narration narrate_simple(const SqlStatement& s) { return default_narrator().narrate(s); }

Narration narrate_nested(const NestedQuery& q, NarrationStyle style) { return default_narrator().narrate(q, style); }

std::vector<Narration> narrate_all(const NestedQuery& q) { return default_narrator().narrate_all(q); }

}  // namespace narsql
