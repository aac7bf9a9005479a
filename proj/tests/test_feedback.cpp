#include "doctest.h"
#include "narsql/feedback.hpp"
#include "narsql/nested_parser.hpp"
#include "narsql/recognizer.hpp"

using namespace narsql;

namespace {

const std::string kData = NARSQL_DATA_DIR;

Database school_db() {
  return load_database(kData + "/schemas/school.schema", kData + "/fixtures/school");
}

std::string run(Database& db, const std::string& sql, FeedbackOptions options = {}) {
  const auto stmt = classify(sql);
  return feedback_for(stmt, execute(stmt, db), options).text;
}

}  // namespace

TEST_CASE("CRUD feedback on the school fixture") {
  auto db = school_db();
  run(db, "DROP TABLE Class;");
  CHECK(run(db, "CREATE TABLE class (ID int, name varchar(45), section varchar(45));") ==
        "You have created a new table called class with the following information, ID stores integer values, "
        "name stores alphanumeric entries that contain 45 characters, section stores alphanumeric entries that "
        "contain 45 characters");
  CHECK(run(db, "SELECT name, age FROM student;") == "There are 6 rows that contains name and ages in the student table");
  CHECK(run(db, "UPDATE Student SET name = 'John' WHERE ID = 6;") ==
        "You have updated a record with a name called John, whose ID number is equal to 6 in the Student table.");
  CHECK(run(db, "DELETE FROM lecturer WHERE name = 'John';") ==
        "You have deleted 1 record from the lecturer table where the name is John");
}

TEST_CASE("feedback from translated requests") {
  auto db = school_db();
  const Translator tr(Lexicon::builtin(), db.schema());
  const auto update = tr.translate("Amend the student name to John whose id is equal to 6");
  CHECK(feedback_for(update, execute(update, db)).text ==
        "You have updated a record with a name called John, whose ID number is equal to 6 in the Student table.");
  const auto del = tr.translate("Remove a record from the lecturer table where the name is John");
  const auto fb = feedback_for(del, execute(del, db));
  CHECK(fb.kind == FeedbackKind::Delete);
  CHECK(fb.text == "You have deleted 1 record from the Lecturer table where the name is John");
}

TEST_CASE("read report variants") {
  auto db = school_db();
  CHECK(run(db, "SELECT name, age FROM student;", {true}) == "There are 6 rows containing name and age in the student table");
  CHECK(run(db, "SELECT name FROM Student WHERE ID = 2;") == "There is 1 row that contains name in the Student table");
  CHECK(run(db, "SELECT * FROM Class;") == "There are 2 rows that contains all columns in the Class table");
  CHECK(run(db, "SELECT COUNT(ID) FROM Student;") == "There is 1 row that contains COUNT(ID) in the Student table");
}

TEST_CASE("feedback for other statements") {
  auto db = school_db();
  CHECK(run(db, "UPDATE Student SET age = 30;") == "You have updated 6 records with a age called 30 in the Student table.");
  CHECK(run(db, "UPDATE Student SET age = 31 WHERE name = 'Paul';") ==
        "You have updated a record with a age called 31, whose name is equal to Paul in the Student table.");
  CHECK(run(db, "DELETE FROM Student WHERE age > 30;") ==
        "You have deleted 1 record from the Student table where the age is greater than 30");
  CHECK(run(db, "INSERT INTO Class (ID, name, section) VALUES (9, 'Art', 'B');") ==
        "You have added 1 record into the Class table");
  CHECK(run(db, "TRUNCATE TABLE Class;") == "You have emptied the Class table, removing 3 records");
  CHECK(run(db, "ALTER TABLE Class ADD COLUMN room int;") == "You have altered the Class table");
  CHECK(run(db, "RENAME TABLE Class TO Course;") == "You have renamed the Class table to Course");
  CHECK(run(db, "DROP TABLE Course, Lecturer;") == "You have removed the Course and Lecturer tables");
  CHECK(run(db, "CREATE DATABASE school;") == "You have created a new database called school");
}

TEST_CASE("nested feedback") {
  auto db = school_db();
  const auto q = parse_nested("DELETE FROM Student WHERE name IN (SELECT name FROM Lecturer WHERE ID = 1);");
  const auto fb = feedback_for(q, execute(q, db));
  CHECK(fb.kind == FeedbackKind::Delete);
  CHECK(fb.text == "You have deleted 1 record from the Student table, using the values retrieved from the Lecturer table");
}

TEST_CASE("clarification prompts") {
  const auto schema = Schema::load(kData + "/schemas/school.schema");
  const auto attr = clarify(AmbiguousColumn("name", {"Lecturer", "Student", "Class"}), schema);
  CHECK(attr.kind == FeedbackKind::ClarifyAttribute);
  CHECK(attr.text == "Do you mean the name in Lecturer, Student or Class table?");
  const auto table = clarify(MissingTable(), schema);
  CHECK(table.kind == FeedbackKind::ClarifyTable);
  CHECK(table.text == "Do you mean the Lecturer, Student or Class table?");
  CHECK(clarify(AmbiguousColumn("name", {"Student"}), schema).text == "Do you mean the name in Student table?");
  const auto kw = clarify(MissingKeywords(), schema);
  CHECK(kw.kind == FeedbackKind::ClarifyKeywords);
  CHECK(kw.text == "Could you specify which {Table}, and its {Attributes} ?");
  CHECK(clarify(Rejected("x"), schema).kind == FeedbackKind::ClarifyKeywords);
}

TEST_CASE("prompts for translator errors") {
  const Translator tr(Lexicon::builtin(), Schema::load(kData + "/schemas/school.schema"));
  try {
    tr.translate("Show me the names in a table");
    FAIL("expected an ambiguity");
  } catch (const SynthesisError& e) {
    CHECK(clarify(e, tr.schema()).text == "Do you mean the name in Lecturer, Student or Class table?");
  }
  try {
    tr.translate("Display all details from the table");
    FAIL("expected a missing table");
  } catch (const SynthesisError& e) {
    CHECK(clarify(e, tr.schema()).text == "Do you mean the Lecturer, Student or Class table?");
  }
}

TEST_CASE("vocabulary gaps are reported") {
  CHECK_THROWS_AS(FeedbackGenerator(Vocabulary::parse("feedback.read = x\n")), VocabularyError);
}
