#include "doctest.h"
#include "narsql/lexer.hpp"

#include <random>
#include <string>
#include <vector>

using namespace narsql;

namespace {

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
  std::vector<TokenKind> out;
  for (const auto& t : tokens) out.push_back(t.kind);
  return out;
}

}  // namespace

TEST_CASE("single identifier") {
  const auto toks = tokenize("student_record");
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].kind == TokenKind::Identifier);
  CHECK(toks[0].lexeme == "student_record");
  CHECK(toks[0].span == Span{0, 14});
}

TEST_CASE("single character identifiers are legal") {
  const auto toks = tokenize("a");
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].kind == TokenKind::Identifier);
}

TEST_CASE("empty and blank input give no tokens") {
  CHECK(tokenize("").empty());
  CHECK(tokenize(" \t\n ").empty());
}

TEST_CASE("where clause fragment") {
  const auto toks = tokenize("WHERE Name = 'Steve';");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(toks[0].value == "WHERE");
  CHECK(toks[1].kind == TokenKind::Identifier);
  CHECK(toks[1].value == "Name");
  CHECK(toks[2].kind == TokenKind::ComparisonOp);
  CHECK(toks[2].value == "=");
  CHECK(toks[3].kind == TokenKind::QuotedString);
  CHECK(toks[3].value == "Steve");
  CHECK(toks[3].lexeme == "'Steve'");
  CHECK(toks[4].kind == TokenKind::Semicolon);
}

TEST_CASE("keywords are case-insensitive but keep source casing") {
  const auto toks = tokenize("select FrOm");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(toks[0].value == "SELECT");
  CHECK(toks[0].lexeme == "select");
  CHECK(toks[1].value == "FROM");
  CHECK(toks[1].lexeme == "FrOm");
}

TEST_CASE("logical operators") {
  for (const char* w : {"AND", "or", "Any", "LIKE", "not", "BETWEEN", "EXISTS", "in", "XOR", "UNIQUE"}) {
    const auto toks = tokenize(w);
    REQUIRE(toks.size() == 1);
    CHECK(toks[0].kind == TokenKind::LogicalOp);
  }
}

TEST_CASE("IS NULL is a single logical operator") {
  const auto toks = tokenize("x is  null");
  REQUIRE(toks.size() == 2);
  CHECK(toks[1].kind == TokenKind::LogicalOp);
  CHECK(toks[1].value == "IS NULL");
  CHECK(toks[1].lexeme == "is  null");
  const auto bare = tokenize("x IS y");
  REQUIRE(bare.size() == 3);
  CHECK(bare[1].kind == TokenKind::Keyword);
}

TEST_CASE("comparison operators use maximal munch") {
  const std::vector<std::string> ops = {"=", ">", "<", "!=", "!<", "!>", ">=", "<=", "<>"};
  for (const auto& op : ops) {
    const auto toks = tokenize("a" + op + "1");
    REQUIRE(toks.size() == 3);
    CHECK(toks[1].kind == TokenKind::ComparisonOp);
    CHECK(toks[1].value == op);
  }
}

TEST_CASE("numbers, floats, arithmetic and punctuation") {
  const auto toks = tokenize("(12, 3.5) * - + / % .");
  CHECK(kinds(toks) == std::vector<TokenKind>{TokenKind::BracketOpen, TokenKind::Number, TokenKind::Comma,
                                              TokenKind::FloatNumber, TokenKind::BracketClose, TokenKind::Star,
                                              TokenKind::ArithmeticOp, TokenKind::ArithmeticOp,
                                              TokenKind::ArithmeticOp, TokenKind::ArithmeticOp, TokenKind::Period});
}

TEST_CASE("qualified names lex as identifier, period, identifier") {
  CHECK(kinds(tokenize("A.Id")) ==
        std::vector<TokenKind>{TokenKind::Identifier, TokenKind::Period, TokenKind::Identifier});
}

TEST_CASE("quoted strings may hold spaces, digits and separators") {
  const auto toks = tokenize("'21 claim street, (x);'");
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].value == "21 claim street, (x);");
}

TEST_CASE("double-quoted strings are accepted") {
  const auto toks = tokenize("\"Pretoria\"");
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].kind == TokenKind::QuotedString);
  CHECK(toks[0].value == "Pretoria");
}

TEST_CASE("lex errors report offsets") {
  SUBCASE("stray character") {
    try {
      tokenize("SELECT @x");
      FAIL("expected LexError");
    } catch (const LexError& e) {
      CHECK(e.offset() == 7);
    }
  }
  SUBCASE("bracket quoting is not a token class") { CHECK_THROWS_AS(tokenize("[Order]"), LexError); }
  SUBCASE("unterminated string") {
    try {
      tokenize("x = 'abc");
      FAIL("expected LexError");
    } catch (const LexError& e) {
      CHECK(e.offset() == 4);
    }
  }
  SUBCASE("escaped quote") { CHECK_THROWS_AS(tokenize("'it''s'"), LexError); }
  SUBCASE("empty string") { CHECK_THROWS_AS(tokenize("''"), LexError); }
  SUBCASE("lone bang") { CHECK_THROWS_AS(tokenize("a ! b"), LexError); }
}

TEST_CASE("reserved words never lex as identifiers") {
  for (const char* w : {"select", "Table", "varchar", "boolean", "null", "all", "to"}) {
    const auto toks = tokenize(w);
    REQUIRE(toks.size() == 1);
    CHECK(toks[0].kind != TokenKind::Identifier);
    CHECK(is_reserved_word(w));
  }
  CHECK_FALSE(is_reserved_word("student"));
}

TEST_CASE("spans cover every non-space character without overlap") {
  std::mt19937 rng(7);
  const std::string alphabet = "ab_1 9.,;()*=<>!+-/%'\t\nSELECT";
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string src;
    const int len = static_cast<int>(rng() % 24);
    for (int i = 0; i < len; ++i) src += alphabet[rng() % alphabet.size()];
    std::vector<Token> toks;
    try {
      toks = tokenize(src);
    } catch (const LexError&) {
      continue;
    }
    ++checked;
    std::vector<bool> covered(src.size(), false);
    std::size_t prev_end = 0;
    for (const auto& t : toks) {
      REQUIRE(t.span.begin < t.span.end);
      REQUIRE(t.span.begin >= prev_end);
      CHECK(src.substr(t.span.begin, t.span.end - t.span.begin) == t.lexeme);
      for (std::size_t i = t.span.begin; i < t.span.end; ++i) covered[i] = true;
      prev_end = t.span.end;
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
      const bool space = src[i] == ' ' || src[i] == '\t' || src[i] == '\n';
      CHECK((covered[i] || space));
    }
    // Re-lexing the space-joined lexemes preserves the kind sequence.
    CHECK(kinds(tokenize(join_lexemes(toks))) == kinds(toks));
    CHECK(tokenize(src) == toks);
  }
  CHECK(checked > 100);
}
