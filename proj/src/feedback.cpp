#include "narsql/feedback.hpp"

#include "narsql/text.hpp"
#include "overload.hpp"

namespace narsql {

namespace {

// The single equality a feedback sentence can name directly, if that is all
// the filter says.
const Predicate* simple_equality(const Filter& f) {
  if (f.negated || f.conjunction || f.first.kind != PredicateKind::Compare || f.first.op != CompareOp::Eq) {
    return nullptr;
  }
  return &f.first;
}

std::string column_type_key(const DataType& t) {
  switch (t.kind) {
    case DataTypeKind::Int: return "feedback.create_table.int";
    case DataTypeKind::Varchar:
      return t.length ? "feedback.create_table.varchar" : "feedback.create_table.varchar_unsized";
    case DataTypeKind::Bool: return "feedback.create_table.bool";
    case DataTypeKind::Float: return "feedback.create_table.float";
  }
  return {};
}

}  // namespace

const std::vector<std::string>& FeedbackGenerator::required_keys() {
  static const std::vector<std::string> keys = {
      "feedback.create_table", "feedback.create_table.int", "feedback.create_table.varchar",
      "feedback.create_table.varchar_unsized", "feedback.create_table.bool", "feedback.create_table.float",
      "feedback.create_database", "feedback.insert", "feedback.read", "feedback.read.one",
      "feedback.read.polished", "feedback.read.polished.one", "feedback.read.all_columns", "feedback.update",
      "feedback.update.unfiltered", "feedback.update.filtered", "feedback.update.number", "feedback.update.one",
      "feedback.update.many", "feedback.alter", "feedback.rename", "feedback.delete", "feedback.delete.filtered",
      "feedback.delete.unconditional", "feedback.drop", "feedback.truncate", "feedback.nested.update",
      "feedback.nested.delete", "feedback.nested.insert", "feedback.record.one", "feedback.record.many",
      "clarify.attribute", "clarify.table", "clarify.keywords", "noun.database", "noun.databases", "noun.table",
      "noun.tables"};
  return keys;
}

FeedbackGenerator::FeedbackGenerator(const Vocabulary& vocabulary, FeedbackOptions options)
    : vocab_(vocabulary), narrator_(vocabulary), options_(options) {
  vocab_.require(required_keys());
}

std::string FeedbackGenerator::record(std::size_t count) const {
  return vocab_.get(count == 1 ? "feedback.record.one" : "feedback.record.many");
}

std::string FeedbackGenerator::count_phrase(std::size_t count) const {
  if (count == 1) return vocab_.get("feedback.update.one");
  return vocab_.fill("feedback.update.many", {{"count", std::to_string(count)}});
}

std::string FeedbackGenerator::read_text(const Projection& p, const std::string& table, std::size_t count) const {
  std::string columns;
  if (p.kind == ProjectionKind::All) {
    columns = vocab_.get("feedback.read.all_columns");
  } else {
    auto names = p.columns;
    if (p.kind == ProjectionKind::Count) names = {"COUNT(" + p.columns.at(0) + ")"};
    // The unpolished report pluralises the last column for several rows.
    if (!options_.polish && count != 1 && p.kind != ProjectionKind::Count && !names.empty()) names.back() += "s";
    columns = text::join_and(names);
  }
  std::string key = options_.polish ? "feedback.read.polished" : "feedback.read";
  if (count == 1) key += ".one";
  return vocab_.fill(key, {{"count", std::to_string(count)}, {"columns", columns}, {"table", table}});
}

Feedback FeedbackGenerator::report(const SqlStatement& s, const ExecResult& result) const {
  const std::size_t n = result.count;
  return std::visit(
      Overload{
          [&](const CreateDatabase& c) {
            return Feedback{FeedbackKind::Create, vocab_.fill("feedback.create_database", {{"name", c.name}})};
          },
          [&](const CreateTable& c) {
            std::vector<std::string> parts;
            for (const auto& col : c.columns) {
              TemplateArgs args{{"column", col.name}};
              if (col.type.length) args["n"] = std::to_string(*col.type.length);
              parts.push_back(vocab_.fill(column_type_key(col.type), args));
            }
            return Feedback{FeedbackKind::Create, vocab_.fill("feedback.create_table",
                                                              {{"table", c.name}, {"columns", text::join(parts, ", ")}})};
          },
          [&](const AlterRename& a) {
            return Feedback{FeedbackKind::Alter, vocab_.fill("feedback.rename", {{"from", a.table}, {"to", a.new_name}})};
          },
          [&](const RenameTable& r) {
            return Feedback{FeedbackKind::Alter, vocab_.fill("feedback.rename", {{"from", r.from}, {"to", r.to}})};
          },
          [&](const AlterColumn& a) {
            return Feedback{FeedbackKind::Alter, vocab_.fill("feedback.alter", {{"table", a.table}})};
          },
          [&](const DropDatabase& d) {
            const auto noun = vocab_.get(d.names.size() == 1 ? "noun.database" : "noun.databases");
            return Feedback{FeedbackKind::Delete,
                            vocab_.fill("feedback.drop", {{"names", text::join_and(d.names)}, {"noun", noun}})};
          },
          [&](const DropTable& d) {
            const auto noun = vocab_.get(d.names.size() == 1 ? "noun.table" : "noun.tables");
            return Feedback{FeedbackKind::Delete,
                            vocab_.fill("feedback.drop", {{"names", text::join_and(d.names)}, {"noun", noun}})};
          },
          [&](const Truncate& t) {
            return Feedback{FeedbackKind::Delete,
                            vocab_.fill("feedback.truncate",
                                        {{"table", t.table}, {"count", std::to_string(n)}, {"record", record(n)}})};
          },
          [&](const Delete& d) {
            TemplateArgs args{{"table", d.table}, {"count", std::to_string(n)}, {"record", record(n)}};
            if (const auto* eq = simple_equality(d.filter)) {
              args["column"] = eq->column;
              args["value"] = eq->values.at(0).text;
              return Feedback{FeedbackKind::Delete, vocab_.fill("feedback.delete", args)};
            }
            args["filter"] = narrator_.describe_filter(d.filter);
            return Feedback{FeedbackKind::Delete, vocab_.fill("feedback.delete.filtered", args)};
          },
          [&](const Insert& i) {
            return Feedback{FeedbackKind::Create,
                            vocab_.fill("feedback.insert",
                                        {{"table", i.table}, {"count", std::to_string(n)}, {"record", record(n)}})};
          },
          [&](const Update& u) {
            TemplateArgs args{
                {"table", u.table}, {"count_phrase", count_phrase(n)}, {"column", u.column}, {"value", u.value.text}};
            if (!u.filter) return Feedback{FeedbackKind::Update, vocab_.fill("feedback.update.unfiltered", args)};
            if (const auto* eq = simple_equality(*u.filter)) {
              const auto& v = eq->values.at(0);
              args["where_column"] = eq->column;
              args["where_value"] = v.text;
              args["number"] = is_numeric(v) ? vocab_.get("feedback.update.number") + " " : "";
              return Feedback{FeedbackKind::Update, vocab_.fill("feedback.update", args)};
            }
            args["filter"] = narrator_.describe_filter(*u.filter);
            return Feedback{FeedbackKind::Update, vocab_.fill("feedback.update.filtered", args)};
          },
          [&](const Select& sel) {
            return Feedback{FeedbackKind::Read, read_text(sel.projection, sel.table, result.rows.size())};
          },
      },
      s);
}

Feedback FeedbackGenerator::report(const NestedQuery& q, const ExecResult& result) const {
  const std::size_t n = result.count;
  return std::visit(
      Overload{
          [&](const UpdateSub& u) {
            return Feedback{FeedbackKind::Update, vocab_.fill("feedback.nested.update", {{"count_phrase", count_phrase(n)},
                                                                                          {"column", u.set_column},
                                                                                          {"value", u.set_value.text},
                                                                                          {"table", u.table},
                                                                                          {"inner_table", u.inner.table}})};
          },
          [&](const DeleteSub& d) {
            return Feedback{FeedbackKind::Delete,
                            vocab_.fill("feedback.nested.delete", {{"count", std::to_string(n)},
                                                                   {"record", record(n)},
                                                                   {"table", d.table},
                                                                   {"inner_table", d.inner.table}})};
          },
          [&](const InsertSub& i) {
            return Feedback{FeedbackKind::Create,
                            vocab_.fill("feedback.nested.insert", {{"count", std::to_string(n)},
                                                                   {"record", record(n)},
                                                                   {"table", i.table},
                                                                   {"inner_table", i.inner.table}})};
          },
          [&](const SelectSubQ& s) {
            return Feedback{FeedbackKind::Read, read_text(s.projection, s.table, result.rows.size())};
          },
      },
      q);
}

Feedback FeedbackGenerator::clarify(const SynthesisError& error, const Schema& schema) const {
  if (const auto* amb = dynamic_cast<const AmbiguousColumn*>(&error)) {
    return Feedback{FeedbackKind::ClarifyAttribute,
                    vocab_.fill("clarify.attribute",
                                {{"column", amb->column()}, {"tables", text::join_and(amb->tables(), "or")}})};
  }
  if (error.kind() == SynthesisErrorKind::MissingTable) {
    std::vector<std::string> names;
    for (const auto& t : schema.tables()) names.push_back(t.name);
    return Feedback{FeedbackKind::ClarifyTable, vocab_.fill("clarify.table", {{"tables", text::join_and(names, "or")}})};
  }
  return Feedback{FeedbackKind::ClarifyKeywords, vocab_.fill("clarify.keywords", {})};
}

namespace {

const FeedbackGenerator& generator(bool polish) {
  static const FeedbackGenerator plain;
  static const FeedbackGenerator polished(Vocabulary::builtin(), FeedbackOptions{true});
  return polish ? polished : plain;
}

}  // namespace

Feedback feedback_for(const SqlStatement& s, const ExecResult& result, FeedbackOptions options) {
  return generator(options.polish).report(s, result);
}

Feedback feedback_for(const NestedQuery& q, const ExecResult& result, FeedbackOptions options) {
  return generator(options.polish).report(q, result);
}

Feedback clarify(const SynthesisError& error, const Schema& schema) { return generator(false).clarify(error, schema); }

}  // namespace narsql
