#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace narsql {

enum class TokenKind {
  Identifier,
  Number,
  FloatNumber,
  QuotedString,
  Keyword,
  Semicolon,
  Comma,
  BracketOpen,
  BracketClose,
  Star,
  ComparisonOp,
  ArithmeticOp,
  LogicalOp,
  Period,
  EndOfInput,
};

std::string_view to_string(TokenKind kind);

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct Token {
  TokenKind kind = TokenKind::EndOfInput;
  // Exact source slice, including the quotes of a string literal.
  std::string lexeme;
  Span span;
  // Keyword and logical-operator names are uppercased, operator symbols are
  // kept as written and string literals are unquoted.
  std::string value;

  bool is(TokenKind k) const { return kind == k; }
  bool is_keyword(std::string_view name) const {
    return kind == TokenKind::Keyword && value == name;
  }
  bool is_logical(std::string_view name) const {
    return kind == TokenKind::LogicalOp && value == name;
  }
  bool operator==(const Token&) const = default;
};

class LexError : public std::runtime_error {
 public:
  LexError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

bool is_reserved_word(std::string_view word);

std::vector<Token> tokenize(std::string_view source);

// Lexemes joined by single spaces.
std::string join_lexemes(const std::vector<Token>& tokens);

}  // namespace narsql
