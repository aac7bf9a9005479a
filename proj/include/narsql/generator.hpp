#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/nested_parser.hpp"
#include "narsql/storage.hpp"

namespace narsql {

// Seeded random ASTs that stay inside the recognised grammars, so every
// rendering re-parses to an equal tree. Identical seeds give identical output.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  SqlStatement statement();  // any simple statement form
  Select select();
  NestedQuery nested(NestedParseOptions options = {});
  // A SELECT whose filter is replaced by "col IN (SELECT ...)"; modifiers are dropped.
  std::string wrap_in_subquery(const Select& s);
  // Rendered simple statements, one per entry.
  std::vector<std::string> statement_corpus(std::size_t count);

  // Two tables, outer (id, a, b) and inner (id, a, b), with at most max_rows
  // rows each and small value domains so that subqueries overlap.
  Database database(std::size_t max_rows);
  // DELETE or SELECT with a subquery over database(); the inner query returns
  // one column of the same type as the outer comparison column.
  NestedQuery executable_nested();

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 0; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  std::string table_name();
  std::string column_name();
  std::vector<std::string> distinct_columns(std::size_t n);
  Literal literal();
  Literal literal_of(LiteralType type);
  DataType datatype();
  CompareOp compare_op();
  Predicate predicate();
  Filter filter();
  Projection projection();
  SelectSub select_sub(NestedParseOptions options);

  std::mt19937_64 rng_;
};

}  // namespace narsql
