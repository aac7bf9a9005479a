#include "narsql/nested_parser.hpp"

#include <array>

#include "token_cursor.hpp"

namespace narsql {
namespace {

using detail::TokenCursor;

constexpr std::array kLogicalOps = {
    "OR", "XOR", "AND", "ANY", "LIKE", "NOT", "EXISTS", "BETWEEN", "IN", "IS NULL", "UNIQUE",
};

void check_balance(const std::vector<Token>& tokens) {
  int depth = 0;
  for (const auto& t : tokens) {
    if (t.is(TokenKind::BracketOpen)) ++depth;
    if (t.is(TokenKind::BracketClose) && --depth < 0) throw UnbalancedParens(t.lexeme, t.span.begin);
  }
  if (depth != 0) {
    const auto& last = tokens.back();
    throw UnbalancedParens(last.lexeme, last.span.begin);
  }
}

bool has_subquery(const std::vector<Token>& tokens) {
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].is(TokenKind::BracketOpen) && tokens[i + 1].is_keyword("SELECT")) return true;
  }
  return false;
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, NestedParseOptions options)
      : tokens_(tokens), cur_(tokens), options_(options) {}

  NestedQuery run() {
    NestedQuery q = nested();
    expect(TokenKind::Semicolon, "';'");
    if (!cur_.at_end()) fail("end of input");
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    const Token* t = cur_.peek();
    if (t) throw ParseError(expected, t->lexeme, t->span.begin);
    const std::size_t end = tokens_.empty() ? 0 : tokens_.back().span.end;
    throw ParseError(expected, "end of input", end);
  }

  void keyword(const char* name) {
    if (!cur_.accept_keyword(name)) fail(name);
  }
  void expect(TokenKind kind, const char* what) {
    if (!cur_.accept(kind)) fail(what);
  }
  std::string ident(const char* what) {
    auto name = cur_.accept_identifier();
    if (!name) fail(what);
    return *name;
  }

  NestedQuery nested() {
    if (cur_.next_is_keyword("UPDATE")) return update_sub();
    if (cur_.next_is_keyword("DELETE")) return delete_sub();
    if (cur_.next_is_keyword("INSERT")) return insert_sub();
    if (cur_.next_is_keyword("SELECT")) return select_sub_q();
    fail("UPDATE, DELETE, INSERT or SELECT");
  }

  UpdateSub update_sub() {
    keyword("UPDATE");
    UpdateSub u;
    u.table = ident("table name");
    keyword("SET");
    u.set_column = ident("column name");
    auto op = cur_.accept_compare_op();
    if (!op) fail("relational operator");
    if (!options_.strict && *op != CompareOp::Eq) fail("'=' in SET clause");
    u.set_op = *op;
    auto value = cur_.accept_literal();
    if (!value) fail("value");
    if (options_.strict && value->type != LiteralType::Int) fail("integer value in SET clause");
    u.set_value = *value;
    keyword("WHERE");
    u.in_column = ident("column name");
    if (!cur_.accept_logical("IN")) fail("IN");
    u.inner = bracketed_select();
    return u;
  }

  DeleteSub delete_sub() {
    keyword("DELETE");
    keyword("FROM");
    DeleteSub d;
    d.table = ident("table name");
    keyword("WHERE");
    d.where_column = ident("column name");
    d.op = operator_name();
    d.inner = bracketed_select();
    return d;
  }

  std::string operator_name() {
    if (auto op = cur_.accept_compare_op()) return std::string(symbol(*op));
    const Token* t = cur_.peek();
    if (t && t->is(TokenKind::LogicalOp)) {
      for (const char* name : kLogicalOps) {
        if (t->value == name) {
          cur_.advance();
          return name;
        }
      }
    }
    fail("relational or logical operator");
  }

  InsertSub insert_sub() {
    keyword("INSERT");
    keyword("INTO");
    InsertSub i;
    i.table = ident("table name");
    expect(TokenKind::BracketOpen, "'('");
    auto cols = cur_.accept_identifier_list();
    if (!cols) fail("column name");
    i.columns = *cols;
    expect(TokenKind::BracketClose, "')'");
    i.inner = bracketed_select();
    return i;
  }

  SelectSubQ select_sub_q() {
    keyword("SELECT");
    SelectSubQ s;
    s.projection = cols_list();
    keyword("FROM");
    s.table = ident("table name");
    keyword("WHERE");
    s.in_column = ident("column name");
    if (!cur_.accept_logical("IN")) fail("IN");
    s.inner = bracketed_select();
    return s;
  }

  SelectSub bracketed_select() {
    expect(TokenKind::BracketOpen, "'('");
    SelectSub s = select_sub();
    expect(TokenKind::BracketClose, "')'");
    return s;
  }

  SelectSub select_sub() {
    keyword("SELECT");
    SelectSub s;
    s.projection = cols_list();
    keyword("FROM");
    s.table = ident("table name");
    if (!cur_.accept_keyword("WHERE")) {
      if (options_.strict) fail("WHERE");
      return s;
    }
    Predicate p;
    p.column = ident("column name");
    auto op = cur_.accept_compare_op();
    if (!op) fail("relational operator");
    p.op = *op;
    auto value = cur_.accept_literal();
    if (!value) fail("value");
    if (options_.strict && value->type != LiteralType::Varchar) fail("quoted value");
    p.values.push_back(*value);
    s.condition = p;
    return s;
  }

  // DISTINCT ident | ident {, ident} | *
  Projection cols_list() {
    Projection p;
    if (cur_.accept(TokenKind::Star)) return p;
    if (cur_.accept_keyword("DISTINCT")) {
      p.kind = ProjectionKind::Distinct;
      p.columns.push_back(ident("column name"));
      return p;
    }
    auto cols = cur_.accept_identifier_list();
    if (!cols) fail("column list or *");
    p.kind = ProjectionKind::Columns;
    p.columns = *cols;
    return p;
  }

  const std::vector<Token>& tokens_;
  TokenCursor cur_;
  NestedParseOptions options_;
};

}  // namespace

ParseError::ParseError(std::string expected, std::string found, std::size_t offset)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " + expected +
                         ", found '" + found + "'"),
      expected_(std::move(expected)),
      found_(std::move(found)),
      offset_(offset) {}

NestedQuery parse_nested(const std::vector<Token>& tokens, NestedParseOptions options) {
  if (tokens.empty()) throw ParseError("nested query", "end of input", 0);
  check_balance(tokens);
  if (!has_subquery(tokens)) {
    throw ParseError("one of the four nested query forms", tokens.front().lexeme,
                     tokens.front().span.begin);
  }
  return Parser(tokens, options).run();
}

NestedQuery parse_nested(std::string_view source, NestedParseOptions options) {
  return parse_nested(tokenize(source), options);
}

std::vector<SqlFragment> linearize(const NestedQuery& q) {
  const std::string inner = render(inner_of(q));
  std::string outer = render(q);
  const std::string bracketed = "(" + inner + ")";
  const auto at = outer.find(bracketed);
  if (at != std::string::npos) outer.replace(at, bracketed.size(), "(...)");
  return {SqlFragment{0, outer}, SqlFragment{1, inner + ";"}};
}

}  // namespace narsql
