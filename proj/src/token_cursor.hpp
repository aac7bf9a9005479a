#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/lexer.hpp"
#include "narsql/text.hpp"

namespace narsql::detail {

// Forward-only view over a token list shared by the two SQL front ends.
class TokenCursor {
 public:
  explicit TokenCursor(const std::vector<Token>& tokens) : tokens_(tokens) {}

  bool at_end() const { return pos_ >= tokens_.size(); }
  std::size_t position() const { return pos_; }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }

  const Token& advance() { return tokens_[pos_++]; }

  bool next_is(TokenKind kind, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->kind == kind;
  }
  bool next_is_keyword(std::string_view name, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->is_keyword(name);
  }
  bool next_is_logical(std::string_view name, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->is_logical(name);
  }

  bool accept(TokenKind kind) {
    if (!next_is(kind)) return false;
    ++pos_;
    return true;
  }
  bool accept_keyword(std::string_view name) {
    if (!next_is_keyword(name)) return false;
    ++pos_;
    return true;
  }
  bool accept_logical(std::string_view name) {
    if (!next_is_logical(name)) return false;
    ++pos_;
    return true;
  }

  std::optional<std::string> accept_identifier() {
    if (!next_is(TokenKind::Identifier)) return std::nullopt;
    return advance().value;
  }

  std::optional<CompareOp> accept_compare_op() {
    if (!next_is(TokenKind::ComparisonOp)) return std::nullopt;
    return parse_compare_op(advance().value);
  }

  // Quoted string, integer, float, negative number or true/false.
  std::optional<Literal> accept_literal() {
    const Token* t = peek();
    if (!t) return std::nullopt;
    switch (t->kind) {
      case TokenKind::QuotedString:
        ++pos_;
        return Literal{LiteralType::Varchar, t->value};
      case TokenKind::Number:
        ++pos_;
        return Literal{LiteralType::Int, t->value};
      case TokenKind::FloatNumber:
        ++pos_;
        return Literal{LiteralType::Float, t->value};
      case TokenKind::ArithmeticOp: {
        const Token* n = peek(1);
        if (t->value == "-" && n && n->span.begin == t->span.end &&
            (n->kind == TokenKind::Number || n->kind == TokenKind::FloatNumber)) {
          pos_ += 2;
          return Literal{n->kind == TokenKind::Number ? LiteralType::Int : LiteralType::Float,
                         "-" + n->value};
        }
        return std::nullopt;
      }
      case TokenKind::Identifier: {
        const auto lower = text::to_lower(t->value);
        if (lower == "true" || lower == "false") {
          ++pos_;
          return Literal{LiteralType::Bool, lower};
        }
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }

  // INT | VARCHAR [(n)] | BOOL | BOOLEAN | FLOAT
  std::optional<DataType> accept_datatype() {
    if (accept_keyword("INT")) return DataType{DataTypeKind::Int, std::nullopt};
    if (accept_keyword("BOOL") || accept_keyword("BOOLEAN")) return DataType{DataTypeKind::Bool, std::nullopt};
    if (accept_keyword("FLOAT")) return DataType{DataTypeKind::Float, std::nullopt};
    if (!accept_keyword("VARCHAR")) return std::nullopt;
    DataType t{DataTypeKind::Varchar, std::nullopt};
    if (next_is(TokenKind::BracketOpen) && next_is(TokenKind::Number, 1) &&
        next_is(TokenKind::BracketClose, 2)) {
      if (peek(1)->value.size() > 9) return std::nullopt;
      ++pos_;
      t.length = std::stoi(advance().value);
      ++pos_;
    }
    return t;
  }

  // ident {, ident}
  std::optional<std::vector<std::string>> accept_identifier_list() {
    std::vector<std::string> names;
    auto first = accept_identifier();
    if (!first) return std::nullopt;
    names.push_back(*first);
    while (next_is(TokenKind::Comma) && next_is(TokenKind::Identifier, 1)) {
      ++pos_;
      names.push_back(advance().value);
    }
    return names;
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

}  // namespace narsql::detail
