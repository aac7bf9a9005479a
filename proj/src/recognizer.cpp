#include "narsql/recognizer.hpp"

#include "token_cursor.hpp"

namespace narsql {
namespace {

using detail::TokenCursor;

[[noreturn]] void reject(std::string reason) { throw NotRecognized(std::move(reason)); }

class Matcher {
 public:
  explicit Matcher(const std::vector<Token>& tokens) : cur_(tokens) {}

  SqlStatement statement() {
    const Token& head = *cur_.peek();
    SqlStatement s = dispatch(head);
    if (!cur_.accept(TokenKind::Semicolon)) reject("unexpected token '" + found() + "' before terminator");
    if (!cur_.at_end()) reject("tokens after terminator");
    return s;
  }

 private:
  std::string found() const {
    const Token* t = cur_.peek();
    return t ? t->lexeme : "end of input";
  }

  std::string ident(const char* what) {
    auto name = cur_.accept_identifier();
    if (!name) reject(std::string("expected ") + what + ", found '" + found() + "'");
    return *name;
  }

  void keyword(const char* name) {
    if (!cur_.accept_keyword(name)) reject(std::string("expected ") + name + ", found '" + found() + "'");
  }

  void token(TokenKind kind, const char* what) {
    if (!cur_.accept(kind)) reject(std::string("expected ") + what + ", found '" + found() + "'");
  }

  Literal literal() {
    auto v = cur_.accept_literal();
    if (!v) reject("expected literal value, found '" + found() + "'");
    return *v;
  }

  std::vector<std::string> ident_list(const char* what) {
    auto names = cur_.accept_identifier_list();
    if (!names) reject(std::string("expected ") + what + ", found '" + found() + "'");
    return *names;
  }

  SqlStatement dispatch(const Token& head) {
    if (head.is_keyword("SELECT")) return select();
    if (head.is_keyword("CREATE")) return create();
    if (head.is_keyword("ALTER")) return alter();
    if (head.is_keyword("DROP")) return drop();
    if (head.is_keyword("RENAME")) return rename();
    if (head.is_keyword("TRUNCATE")) return truncate();
    if (head.is_keyword("DELETE")) return remove();
    if (head.is_keyword("INSERT")) return insert();
    if (head.is_keyword("UPDATE")) return update();
    reject("unknown statement start '" + head.lexeme + "'");
  }

  SqlStatement create() {
    keyword("CREATE");
    if (cur_.accept_keyword("DATABASE")) {
      CreateDatabase c;
      c.if_not_exists = if_not_exists();
      c.name = ident("database name");
      return c;
    }
    keyword("TABLE");
    CreateTable c;
    c.if_not_exists = if_not_exists();
    c.name = ident("table name");
    token(TokenKind::BracketOpen, "(");
    do {
      c.columns.push_back(column_def());
    } while (cur_.accept(TokenKind::Comma));
    token(TokenKind::BracketClose, ")");
    return c;
  }

  bool if_not_exists() {
    if (!cur_.accept_keyword("IF")) return false;
    if (!cur_.accept_logical("NOT")) reject("expected NOT after IF");
    if (!cur_.accept_logical("EXISTS")) reject("expected EXISTS after IF NOT");
    return true;
  }

  bool if_exists() {
    if (!cur_.accept_keyword("IF")) return false;
    if (!cur_.accept_logical("EXISTS")) reject("expected EXISTS after IF");
    return true;
  }

  ColumnDef column_def() {
    ColumnDef c;
    c.name = ident("column name");
    auto t = cur_.accept_datatype();
    if (!t) reject("expected datatype, found '" + found() + "'");
    c.type = *t;
    return c;
  }

  SqlStatement alter() {
    keyword("ALTER");
    cur_.accept_keyword("TABLE");
    const std::string table = ident("table name");
    if (cur_.accept_keyword("RENAME")) {
      keyword("TO");
      return AlterRename{table, ident("new table name")};
    }
    AlterColumn a;
    a.table = table;
    if (cur_.accept_keyword("ADD")) {
      a.action = AlterAction::Add;
    } else if (cur_.accept_keyword("DROP")) {
      a.action = AlterAction::Drop;
    } else if (cur_.accept_keyword("MODIFY")) {
      a.action = AlterAction::Modify;
    } else {
      reject("expected RENAME, ADD, DROP or MODIFY, found '" + found() + "'");
    }
    keyword("COLUMN");
    a.column = column_def();
    return a;
  }

  SqlStatement drop() {
    keyword("DROP");
    if (cur_.accept_keyword("DATABASE")) {
      DropDatabase d;
      d.if_exists = if_exists();
      d.names = ident_list("database name");
      return d;
    }
    keyword("TABLE");
    DropTable d;
    d.if_exists = if_exists();
    d.names = ident_list("table name");
    return d;
  }

  SqlStatement rename() {
    keyword("RENAME");
    keyword("TABLE");
    RenameTable r;
    r.from = ident("table name");
    keyword("TO");
    r.to = ident("new table name");
    return r;
  }

  SqlStatement truncate() {
    keyword("TRUNCATE");
    keyword("TABLE");
    return Truncate{ident("table name")};
  }

  SqlStatement remove() {
    keyword("DELETE");
    keyword("FROM");
    Delete d;
    d.table = ident("table name");
    keyword("WHERE");
    d.filter = filter();
    return d;
  }

  SqlStatement insert() {
    keyword("INSERT");
    keyword("INTO");
    Insert i;
    i.table = ident("table name");
    token(TokenKind::BracketOpen, "(");
    i.columns = ident_list("column name");
    token(TokenKind::BracketClose, ")");
    keyword("VALUES");
    token(TokenKind::BracketOpen, "(");
    do {
      i.values.push_back(literal());
    } while (cur_.accept(TokenKind::Comma));
    token(TokenKind::BracketClose, ")");
    if (i.columns.size() != i.values.size()) reject("column and value counts differ");
    return i;
  }

  SqlStatement update() {
    keyword("UPDATE");
    Update u;
    u.table = ident("table name");
    keyword("SET");
    u.column = ident("column name");
    auto op = cur_.accept_compare_op();
    if (!op || *op != CompareOp::Eq) reject("expected = in SET clause");
    u.value = literal();
    if (cur_.accept_keyword("WHERE")) u.filter = filter();
    return u;
  }

  SqlStatement select() {
    keyword("SELECT");
    Select s;
    s.projection = projection();
    keyword("FROM");
    s.table = ident("table name");
    if (cur_.accept_keyword("WHERE")) s.filter = filter();
    if (cur_.next_is_keyword("ORDER") || cur_.next_is_keyword("GROUP")) s.modifier = modifier(s.projection);
    return s;
  }

  Projection projection() {
    Projection p;
    if (cur_.accept(TokenKind::Star)) return p;
    if (cur_.accept_keyword("DISTINCT")) {
      p.kind = ProjectionKind::Distinct;
      p.columns = ident_list("column name");
      return p;
    }
    if (cur_.accept_keyword("COUNT")) {
      p.kind = ProjectionKind::Count;
      token(TokenKind::BracketOpen, "(");
      p.columns.push_back(ident("column name"));
      token(TokenKind::BracketClose, ")");
      return p;
    }
    p.kind = ProjectionKind::Columns;
    p.columns = ident_list("column list or *");
    return p;
  }

  Modifier modifier(const Projection& projection) {
    if (cur_.accept_keyword("ORDER")) {
      keyword("BY");
      OrderBy o;
      o.column = ident("column name");
      if (cur_.accept_keyword("DESC")) {
        o.direction = SortDirection::Desc;
      } else {
        cur_.accept_keyword("ASC");
      }
      return o;
    }
    keyword("GROUP");
    keyword("BY");
    const std::string group = ident("column name");
    if (!cur_.accept_keyword("HAVING")) return GroupBy{group};
    if (projection.kind != ProjectionKind::Count) reject("HAVING COUNT requires a COUNT projection");
    HavingCount h;
    h.group_column = group;
    keyword("COUNT");
    token(TokenKind::BracketOpen, "(");
    h.column = ident("column name");
    token(TokenKind::BracketClose, ")");
    auto op = cur_.accept_compare_op();
    if (!op) reject("expected comparison operator after HAVING COUNT");
    h.op = *op;
    h.value = literal();
    return h;
  }

  Filter filter() {
    Filter f;
    f.negated = cur_.accept_logical("NOT");
    f.first = predicate();
    if (cur_.next_is_logical("AND") || cur_.next_is_logical("OR")) {
      if (f.negated) reject("NOT cannot be combined with a conjunction");
      f.conjunction = cur_.advance().value == "AND" ? Conjunction::And : Conjunction::Or;
      f.second = predicate();
      if (cur_.next_is_logical("AND") || cur_.next_is_logical("OR")) {
        reject("more than two conditions");
      }
    }
    return f;
  }

  Predicate predicate() {
    Predicate p;
    p.column = ident("column name");
    if (auto op = cur_.accept_compare_op()) {
      p.kind = PredicateKind::Compare;
      p.op = *op;
      p.values.push_back(literal());
    } else if (cur_.accept_logical("IN")) {
      p.kind = PredicateKind::In;
      token(TokenKind::BracketOpen, "(");
      do {
        p.values.push_back(literal());
      } while (cur_.accept(TokenKind::Comma));
      token(TokenKind::BracketClose, ")");
    } else if (cur_.accept_logical("BETWEEN")) {
      p.kind = PredicateKind::Between;
      p.values.push_back(literal());
      if (!cur_.accept_logical("AND")) reject("expected AND inside BETWEEN");
      p.values.push_back(literal());
    } else if (cur_.accept_logical("LIKE")) {
      p.kind = PredicateKind::Like;
      p.values.push_back(literal());
    } else {
      reject("expected condition operator, found '" + found() + "'");
    }
    return p;
  }

  TokenCursor cur_;
};

bool has_parenthesised_select(const std::vector<Token>& tokens) {
  int depth = 0;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::BracketOpen) ++depth;
    if (t.kind == TokenKind::BracketClose && depth > 0) --depth;
    if (depth > 0 && t.is_keyword("SELECT")) return true;
  }
  return false;
}

}  // namespace

SqlStatement classify(const std::vector<Token>& tokens) {
  if (tokens.empty()) reject("empty statement");
  if (has_parenthesised_select(tokens)) throw NestedDetected();
  if (!tokens.back().is(TokenKind::Semicolon)) reject("missing terminator");
  return Matcher(tokens).statement();
}

SqlStatement classify(std::string_view source) { return classify(tokenize(source)); }

RecognitionReport classify_batch(const std::vector<std::string>& statements) {
  RecognitionReport report;
  report.verdicts.reserve(statements.size());
  for (const auto& text : statements) {
    Verdict v;
    try {
      v.statement = classify(std::string_view(text));
      v.outcome = Outcome::Recognized;
      ++report.recognized;
    } catch (const NestedDetected& e) {
      v.outcome = Outcome::Nested;
      v.reason = e.what();
      ++report.nested;
    } catch (const NotRecognized& e) {
      v.reason = e.reason();
      ++report.failed;
    } catch (const LexError& e) {
      v.reason = e.what();
      ++report.failed;
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace narsql
