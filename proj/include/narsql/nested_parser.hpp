#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/lexer.hpp"

namespace narsql {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string expected, std::string found, std::size_t offset);
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string expected_;
  std::string found_;
  std::size_t offset_;
};

class UnbalancedParens : public ParseError {
 public:
  UnbalancedParens(std::string found, std::size_t offset)
      : ParseError("balanced parentheses", std::move(found), offset) {}
};

struct NestedParseOptions {
  // Strict follows the grammar literally: the inner WHERE is mandatory and
  // compares against a quoted value, and UPDATE SET takes any relational
  // operator with an integer. Lenient makes the inner WHERE optional, accepts
  // any literal there, and restricts SET to "=" with any literal.
  bool strict = false;
};

NestedQuery parse_nested(const std::vector<Token>& tokens, NestedParseOptions options = {});
NestedQuery parse_nested(std::string_view source, NestedParseOptions options = {});

struct SqlFragment {
  int depth = 0;  // 0 for the outer statement
  std::string sql;
  bool operator==(const SqlFragment&) const = default;
};

// Outer fragment (inner query shown as "(...)") followed by the inner query.
std::vector<SqlFragment> linearize(const NestedQuery& q);

}  // namespace narsql
