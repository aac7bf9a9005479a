#include "doctest.h"
#include "narsql/narrator.hpp"
#include "narsql/nl2sql.hpp"
#include "narsql/recognizer.hpp"

#include <algorithm>
#include <random>

using namespace narsql;

namespace {

const std::string kData = NARSQL_DATA_DIR;

const Translator& northwind() {
  static const Translator tr(Lexicon::builtin(), Schema::load(kData + "/schemas/xnorthwind.schema"));
  return tr;
}

const Translator& school() {
  static const Translator tr(Lexicon::builtin(), Schema::load(kData + "/schemas/school.schema"));
  return tr;
}

std::string sql(const Translator& tr, std::string_view request) { return render(tr.translate(request)); }

std::vector<std::string> symbol_text(const NlRequest& r) {
  std::vector<std::string> out;
  for (const auto& s : r.symbols) out.push_back(to_string(s));
  return out;
}

}  // namespace

TEST_CASE("lexicon file") {
  const auto& lex = Lexicon::builtin();
  CHECK(lex.find_action("find")->index == 5);
  CHECK(lex.find_action("find")->canonical == "SELECT");
  CHECK(lex.find_action("amend")->canonical == "UPDATE");
  CHECK(lex.find_action("build")->canonical == "CREATE");
  CHECK(lex.find_action("add")->canonical == "INSERT");
  CHECK(lex.column_index("*") == 21);
  CHECK(lex.column_index("Country") == 9);
  CHECK(lex.table_index("Shippers") == 7);
  CHECK(lex.is_stopword("the"));
  for (const char* w : {"all", "and", "or", "is", "to"}) CHECK_FALSE(lex.is_stopword(w));
  CHECK_THROWS_AS(Lexicon::parse("find = SELECT\n"), LexiconError);
  CHECK_THROWS_AS(Lexicon::parse("[actions]\nfind = FETCH\n"), LexiconError);
  CHECK_THROWS_AS(Lexicon::parse("[verbs]\n"), LexiconError);
}

TEST_CASE("normalisation maps words to symbols") {
  const auto r = northwind().normalize(
      "Please, help me to find all the employees' information that work for this organisation");
  CHECK(symbol_text(r) == std::vector<std::string>{"a5", "b21", "c5"});
  CHECK(r.unresolved.empty());
  CHECK(r.content_tokens.size() == r.symbols.size() + r.unresolved.size());

  const auto countries = northwind().normalize("show me only the employee countries");
  REQUIRE(countries.symbols.size() == 3);
  CHECK(to_string(countries.symbols[0]) == "a2");
  CHECK(to_string(countries.symbols[1]) == to_string(northwind().table_symbol("Employees")));
  CHECK(to_string(countries.symbols[2]) == "b9");

  const auto empty = northwind().normalize("the of a");
  CHECK(empty.symbols.empty());
  CHECK(empty.unresolved.empty());
}

TEST_CASE("values are never mapped to symbols") {
  const auto r = northwind().normalize("show customers where city is 'Country' and the country = Sweden");
  std::vector<std::string> values;
  for (const auto& i : r.items) {
    if (i.kind == NlItemKind::Value) values.push_back(i.canonical);
  }
  CHECK(values == std::vector<std::string>{"Country", "Sweden"});
  CHECK(sql(northwind(), "show customers where city is 'Country' and the country = Sweden") ==
        "SELECT * FROM Customers WHERE City = 'Country' AND Country = 'Sweden';");
}

TEST_CASE("request examples") {
  CHECK(sql(northwind(), "Please, show me all the information from the customers table.") == "SELECT * FROM Customers;");
  CHECK(sql(northwind(), "select all columns from customer table where the Country column has South Africa for its value") ==
        "SELECT * FROM Customers WHERE Country = 'South Africa';");
  CHECK(sql(northwind(), "show me only the employee countries") == "SELECT Country FROM Employees;");
  CHECK(sql(school(), "Amend the student name to John whose id is equal to 6") ==
        "UPDATE Student SET name = 'John' WHERE ID = 6;");
  CHECK(sql(school(), "Remove a record from the lecturer table where the name is John") ==
        "DELETE FROM Lecturer WHERE name = 'John';");
  CHECK(sql(school(), "Show the name and age of the student table") == "SELECT name, age FROM Student;");
}

TEST_CASE("synthesis errors") {
  try {
    school().translate("Show me the names in a table");
    FAIL("expected an ambiguity");
  } catch (const AmbiguousColumn& e) {
    CHECK(e.column() == "name");
    CHECK(e.tables() == std::vector<std::string>{"Lecturer", "Student", "Class"});
  }
  CHECK_THROWS_AS(school().translate("Display all details from the table"), MissingTable);
  CHECK_THROWS_AS(school().translate("Show the information from the table"), MissingKeywords);
  CHECK_THROWS_AS(school().translate("the student table please"), MissingAction);
  CHECK_THROWS_AS(school().translate("show the student and lecturer tables"), Rejected);
  CHECK_THROWS_AS(school().translate("delete the student table"), Rejected);
  CHECK_THROWS_AS(school().translate("make a class table"), Rejected);
  CHECK_THROWS_AS(school().translate("show the section of the lecturer"), Rejected);
}

TEST_CASE("table inference prefers the primary key owner") {
  CHECK(sql(northwind(), "Show all the employeeID.") == "SELECT EmployeeID FROM Employees;");
  CHECK(sql(school(), "show the gender") == "SELECT gender FROM Student;");
  CHECK(sql(northwind(), "select the Customer Name and company Name") == "SELECT ContactName, CompanyName FROM Customers;");
}

TEST_CASE("clarifying answers are merged and retried") {
  const auto pending = school().normalize("Show me the names in a table");
  CHECK_THROWS_AS(school().synthesize(pending), AmbiguousColumn);
  CHECK(render(school().synthesize(school().merge(pending, "Student"))) == "SELECT name FROM Student;");
}

TEST_CASE("the acceptance machine reads one action and one table") {
  const auto& m = northwind().machine();
  const JfaSymbol find{SymbolCategory::QueryType, 5};
  const JfaSymbol remove{SymbolCategory::QueryType, 8};
  const JfaSymbol all{SymbolCategory::ColumnType, 21};
  const JfaSymbol employees{SymbolCategory::EntityType, 5};
  const JfaSymbol shippers{SymbolCategory::EntityType, 7};
  CHECK(accepts(m, {all, employees, find}));
  CHECK(accepts(m, {employees, find, employees}));
  CHECK_FALSE(accepts(m, {find, all}));
  CHECK_FALSE(accepts(m, {find, employees, shippers}));
  CHECK_FALSE(accepts(m, {find, remove, employees}));
  CHECK_THROWS_AS(accepts(m, {JfaSymbol{SymbolCategory::EntityType, 99}}), UnknownSymbol);
}

TEST_CASE("synthesised statements re-parse and ignore symbol order") {
  const std::vector<std::string> requests = {
      "Display all employee records",
      "List the first name, Phone, and city of all customers",
      "show the products where the UnitPrice is 18",
      "change the phone of shippers to 555 where the ShippersID is 1",
      "delete the orders whose Freight is 11.61",
      "show the discontinued products where discontinued is true",
  };
  std::mt19937_64 rng(7);
  for (const auto& r : requests) {
    auto req = northwind().normalize(r);
    const auto stmt = northwind().synthesize(req);
    CHECK_NOTHROW(classify(render(stmt)));
    CHECK(classify(render(stmt)) == stmt);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(req.symbols.begin(), req.symbols.end(), rng);
      CHECK(northwind().synthesize(req) == stmt);
    }
  }
}

TEST_CASE("canonical comparison folds case, underscores and plurals") {
  const auto& schema = northwind().schema();
  CHECK(canonicalize(classify("SELECT cities FROM employee;"), schema) ==
        canonicalize(classify("SELECT City FROM Employees;"), schema));
  CHECK(canonicalize(classify("SELECT * FROM order_details;"), schema) ==
        canonicalize(classify("SELECT * FROM OrderDetails;"), schema));
  CHECK_FALSE(canonicalize(classify("SELECT * FROM t WHERE a = 'x';"), schema) ==
              canonicalize(classify("SELECT * FROM t WHERE a = 'X';"), schema));
}

TEST_CASE("pair evaluation") {
  const auto none = evaluate_pairs({}, northwind());
  CHECK(none.total == 0);
  CHECK_FALSE(none.defined);
  CHECK(none.ratio == 0.0);

  const auto acc = evaluate_pairs({{1, "Display the orders information", "SELECT * FROM orders;"},
                                   {2, "List the order ids", "SELECT orderID and x FROM orders;"},
                                   {3, "List the customers in Sweden", "SELECT * FROM Customer WHERE Country = 'Sweden';"}},
                                  northwind());
  CHECK(acc.matched == 1);
  CHECK(acc.unmatchable == 1);
  CHECK(acc.total == 3);
  CHECK_FALSE(acc.outcomes[1].gold_parses);
}

TEST_CASE("narrations of generated selects translate back") {
  const auto& schema = northwind().schema();
  std::mt19937_64 rng(11);
  int matched = 0;
  for (int i = 0; i < 10; ++i) {
    const auto& t = schema.tables()[rng() % schema.tables().size()];
    Select s;
    s.table = t.name;
    // Columns that are also table names or synonyms of another column are skipped.
    std::vector<std::string> plain;
    for (const auto& c : t.columns) {
      if (c.type.kind == DataTypeKind::Varchar && c.name.find("ID") == std::string::npos) plain.push_back(c.name);
    }
    if (rng() % 2 && !plain.empty()) {
      s.projection = {ProjectionKind::Columns, {plain[rng() % plain.size()]}};
    }
    if (rng() % 2 && !plain.empty()) {
      s.filter = Filter{false, Predicate{plain[rng() % plain.size()], PredicateKind::Compare, CompareOp::Eq,
                                         {Literal{LiteralType::Varchar, "Lisbon"}}},
                        std::nullopt, std::nullopt};
    }
    const auto text = narrate_simple(s).text;
    const SqlStatement stmt = s;
    if (canonicalize(northwind().translate(text), schema) == canonicalize(stmt, schema)) ++matched;
    else MESSAGE(text << " -> " << render(northwind().translate(text)));
  }
  CHECK(matched == 10);
}
