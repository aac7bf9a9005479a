#include "narsql/lexer.hpp"

#include <array>
#include <cctype>

#include "narsql/text.hpp"

namespace narsql {
namespace {

constexpr std::array kReserved = {
    "SELECT", "FROM",   "WHERE",   "CREATE",  "TABLE", "DATABASE", "INSERT", "INTO",
    "VALUES", "UPDATE", "SET",     "DELETE",  "DROP",  "ALTER",    "RENAME", "TO",
    "TRUNCATE", "ADD",  "MODIFY",  "COLUMN",  "DISTINCT", "ORDER", "GROUP",  "BY",
    "HAVING", "COUNT",  "ASC",     "DESC",    "IF",    "EXISTS",   "IN",     "AND",
    "OR",     "NOT",    "BETWEEN", "LIKE",    "ANY",   "ALL",      "IS",     "NULL",
    "UNIQUE", "XOR",    "INT",     "VARCHAR", "BOOL",  "BOOLEAN",  "FLOAT",
};

constexpr std::array kLogical = {
    "AND", "OR", "ANY", "LIKE", "NOT", "BETWEEN", "EXISTS", "IN", "XOR", "UNIQUE",
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_logical_name(std::string_view upper) {
  for (const char* w : kLogical) {
    if (upper == w) return true;
  }
  return false;
}

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  Token make(TokenKind kind, std::size_t begin, std::string value) {
    Token t;
    t.kind = kind;
    t.span = {begin, pos_};
    t.lexeme = std::string(src_.substr(begin, pos_ - begin));
    t.value = std::move(value);
    return t;
  }

  Token next() {
    const std::size_t begin = pos_;
    const char c = peek();

    if (is_ident_start(c)) return word(begin);
    if (is_digit(c)) return number(begin);
    if (c == '\'' || c == '"') return quoted(begin, c);

    switch (c) {
      case ';': ++pos_; return make(TokenKind::Semicolon, begin, ";");
      case ',': ++pos_; return make(TokenKind::Comma, begin, ",");
      case '(': ++pos_; return make(TokenKind::BracketOpen, begin, "(");
      case ')': ++pos_; return make(TokenKind::BracketClose, begin, ")");
      case '*': ++pos_; return make(TokenKind::Star, begin, "*");
      case '.': ++pos_; return make(TokenKind::Period, begin, ".");
      case '+': case '-': case '/': case '%':
        ++pos_;
        return make(TokenKind::ArithmeticOp, begin, std::string(1, c));
      case '=': ++pos_; return make(TokenKind::ComparisonOp, begin, "=");
      case '<':
      case '>': {
        ++pos_;
        std::string sym(1, c);
        if (peek() == '=' || (c == '<' && peek() == '>')) sym += src_[pos_++];
        return make(TokenKind::ComparisonOp, begin, sym);
      }
      case '!': {
        const char n = peek(1);
        if (n == '=' || n == '<' || n == '>') {
          pos_ += 2;
          return make(TokenKind::ComparisonOp, begin, std::string{'!', n});
        }
        break;
      }
      default:
        break;
    }
    throw LexError(begin, "unexpected character");
  }

  Token word(std::size_t begin) {
    while (is_ident_char(peek())) ++pos_;
    const auto upper = text::to_upper(src_.substr(begin, pos_ - begin));
    if (upper == "IS") {
      // IS NULL is one logical operator; a bare IS stays a keyword.
      std::size_t probe = pos_;
      while (probe < src_.size() && is_space(src_[probe])) ++probe;
      std::size_t stop = probe;
      while (stop < src_.size() && is_ident_char(src_[stop])) ++stop;
      if (stop > probe && probe > pos_ &&
          text::to_upper(src_.substr(probe, stop - probe)) == "NULL") {
        pos_ = stop;
        return make(TokenKind::LogicalOp, begin, "IS NULL");
      }
    }
    if (is_logical_name(upper)) return make(TokenKind::LogicalOp, begin, upper);
    if (is_reserved_word(upper)) return make(TokenKind::Keyword, begin, upper);
    return make(TokenKind::Identifier, begin, std::string(src_.substr(begin, pos_ - begin)));
  }

  Token number(std::size_t begin) {
    while (is_digit(peek())) ++pos_;
    if (peek() == '.' && is_digit(peek(1))) {
      ++pos_;
      while (is_digit(peek())) ++pos_;
      return make(TokenKind::FloatNumber, begin, std::string(src_.substr(begin, pos_ - begin)));
    }
    return make(TokenKind::Number, begin, std::string(src_.substr(begin, pos_ - begin)));
  }

  Token quoted(std::size_t begin, char quote) {
    ++pos_;
    const std::size_t content = pos_;
    while (pos_ < src_.size() && src_[pos_] != quote) ++pos_;
    if (pos_ >= src_.size()) throw LexError(begin, "unterminated string");
    if (pos_ == content) {
      // Covers both the empty string and the start of a '' escape; neither
      // is part of the token classes.
      throw LexError(begin, "empty or escaped string literal");
    }
    std::string value(src_.substr(content, pos_ - content));
    ++pos_;
    if (peek() == quote) throw LexError(pos_ - 1, "escaped quote inside string literal");
    return make(TokenKind::QuotedString, begin, std::move(value));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "Identifier";
    case TokenKind::Number: return "Number";
    case TokenKind::FloatNumber: return "FloatNumber";
    case TokenKind::QuotedString: return "QuotedString";
    case TokenKind::Keyword: return "Keyword";
    case TokenKind::Semicolon: return "Semicolon";
    case TokenKind::Comma: return "Comma";
    case TokenKind::BracketOpen: return "BracketOpen";
    case TokenKind::BracketClose: return "BracketClose";
    case TokenKind::Star: return "Star";
    case TokenKind::ComparisonOp: return "ComparisonOp";
    case TokenKind::ArithmeticOp: return "ArithmeticOp";
    case TokenKind::LogicalOp: return "LogicalOp";
    case TokenKind::Period: return "Period";
    case TokenKind::EndOfInput: return "EndOfInput";
  }
  return "?";
}

bool is_reserved_word(std::string_view word) {
  const auto upper = text::to_upper(word);
  for (const char* w : kReserved) {
    if (upper == w) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view source) { return Scanner(source).run(); }

std::string join_lexemes(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i].lexeme;
  }
  return out;
}

}  // namespace narsql
