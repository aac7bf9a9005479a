#include "doctest.h"
#include "narsql/nested_parser.hpp"
#include "narsql/narrator.hpp"
#include "narsql/recognizer.hpp"
#include "support/golden.hpp"

#include <set>

using namespace narsql;
using narsql::testing::normalize_golden;

namespace {

std::string simple(std::string_view sql) { return narrate_simple(classify(sql)).text; }

void check_golden(std::string_view actual, std::string_view expected) {
  CHECK(normalize_golden(actual) == normalize_golden(expected));
}

}  // namespace

TEST_CASE("template filling") {
  CHECK(fill_template("a {x} b", {{"x", "1"}}) == "a 1 b");
  CHECK(fill_template("{{Table}} {x}", {{"x", "y"}}) == "{Table} y");
  CHECK_THROWS_AS(fill_template("{missing}", {}), std::logic_error);
  CHECK_THROWS_AS(fill_template("{open", {}), std::logic_error);
}

TEST_CASE("vocabulary parsing") {
  const auto v = Vocabulary::parse("# comment\nop.= = is\n\nplain=value\n  spaced  =  x y  \n");
  CHECK(v.get("op.=") == "is");
  CHECK(v.get("plain") == "value");
  CHECK(v.get("spaced") == "x y");
  CHECK_THROWS_AS(v.get("nope"), VocabularyError);
  CHECK_THROWS_AS(Vocabulary::parse("no separator here"), VocabularyError);
  CHECK_THROWS_AS(Narrator(Vocabulary::parse("a = b")), VocabularyError);
  CHECK_NOTHROW(Narrator(Vocabulary::builtin()));
}

TEST_CASE("operator keys survive the '=' separator") {
  const auto& v = Vocabulary::builtin();
  CHECK(v.get("op.=") == "is");
  CHECK(v.get("op.>=") == "is at least");
  CHECK(v.get("link.IS NULL") == "is empty regardless of");
}

TEST_CASE("DDL narrations") {
  check_golden(simple("CREATE DATABASE student_db;"), "This query creates a database named student_db");
  check_golden(simple("ALTER TABLE supplier ADD COLUMN supplier_name varchar(255);"),
               "This query alters the supplier table by adding a new column called supplier_name that allows "
               "alphanumeric entry with at most 255 characters");
  check_golden(simple("DROP DATABASE IF EXISTS student_information ;"),
               "This query erases the student_information database from the computer memory given that it "
               "previously exists");
  check_golden(simple("RENAME TABLE student_record TO student_information ;"),
               "This query renames the student_record table to student_information");
  check_golden(simple("TRUNCATE TABLE student_information ;"),
               "This query empties the contents from the student_information table");
}

TEST_CASE("DML narrations") {
  check_golden(simple("DELETE FROM student_information WHERE student_firstname = 'peter' ;"),
               "This query removes from the student_information table where the student_firstname is peter");
  check_golden(simple("SELECT * FROM Customers WHERE Country='South Africa' OR City = 'Harare' ;"),
               "The query displays all the information from the Customers table where the Country is 'South "
               "Africa', or City is Harare");
  CHECK(simple("SELECT * FROM student_information WHERE FirstName IN ( 'peter' , 'john' , 'felix' );") ==
        "The query displays all the information from the student_information table where the FirstName are "
        "either 'peter', 'john', 'felix'");
}

TEST_CASE("grammatical number follows the value list") {
  CHECK(simple("SELECT * FROM t WHERE a IN ('x');") ==
        "The query displays all the information from the t table where the a is 'x'");
  CHECK(simple("DROP TABLE a, b;") == "This query erases the a and b tables from the computer memory");
}

TEST_CASE("ordering, grouping, update and negation narrations") {
  CHECK(simple("SELECT a FROM t ORDER BY a DESC;") ==
        "The query displays the a information from the t table, sorted by a in descending order");
  CHECK(simple("SELECT COUNT(id) FROM t GROUP BY d HAVING COUNT(id) > 2;") ==
        "The query displays the number of id entries from the t table, grouped by d, keeping only the groups "
        "where the count of id is greater than 2");
  CHECK(simple("UPDATE Student SET name = 'John' WHERE ID = 6;") ==
        "This query changes the name to John in the Student table where the ID is 6");
  CHECK(simple("ALTER TABLE a RENAME TO b;") == "This query alters the a table by renaming it to b");
  CHECK(simple("SELECT a FROM t WHERE NOT b LIKE 'x%';") ==
        "The query displays the a information from the t table where it is not the case that the b matches the "
        "pattern 'x%'");
}

TEST_CASE("nested narrations of the delete example") {
  const auto q = parse_nested("DELETE FROM country WHERE city IN (SELECT city FROM country WHERE city = 'Pretoria');");
  const auto all = narrate_all(q);
  REQUIRE(all.size() == 3);
  CHECK(all[0].style == NarrationStyle::OuterToInner);
  CHECK(all[1].style == NarrationStyle::InnerToOuter);
  CHECK(all[2].style == NarrationStyle::CoJoined);
  CHECK(all[0].text ==
        "This query displays the city information from the country table where the city is equal to Pretoria and "
        "removes the entire information from the country table.");
  CHECK(all[1].text ==
        "This query removes the information from the country table where the city is contained in the values "
        "retrieved from the inner query, which gets all the city information that has a city equal to Pretoria");
  CHECK(all[2].text.rfind("This nested query contains two queries", 0) == 0);
  CHECK(all[0].token_index.front() == "DELETE");
}

TEST_CASE("nested styles are pairwise distinct and faithful for every form") {
  const std::vector<std::string> inputs = {
      "UPDATE emp SET salary = 100 WHERE id IN (SELECT DISTINCT id FROM staff WHERE dept = 'x');",
      "DELETE FROM t WHERE a >= (SELECT * FROM u WHERE c = 'x');",
      "INSERT INTO Student (a, b) (SELECT a, b FROM old);",
      "SELECT lastname FROM Student WHERE lastname IN (SELECT lastname FROM records WHERE lastname = 'x');",
  };
  for (const auto& sql : inputs) {
    const auto q = parse_nested(sql);
    const auto all = narrate_all(q);
    std::set<std::string> texts;
    for (const auto& n : all) {
      texts.insert(n.text);
      for (const auto& name : mentioned_names(q)) {
        CHECK_MESSAGE(n.text.find(name) != std::string::npos, name << " missing from: " << n.text);
      }
    }
    CHECK(texts.size() == 3);
    CHECK(narrate_all(q)[1].text == all[1].text);
  }
}

TEST_CASE("simple narration is rejected for a nested style") {
  const auto q = parse_nested("INSERT INTO s (a) (SELECT a FROM t);");
  CHECK_THROWS_AS(narrate_nested(q, NarrationStyle::Simple), std::invalid_argument);
}
