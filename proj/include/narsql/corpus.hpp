#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "narsql/nl2sql.hpp"
#include "narsql/recognizer.hpp"

namespace narsql {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};

// Text left after the last terminating semicolon.
class DanglingFragment : public CorpusError {
 public:
  explicit DanglingFragment(std::string fragment)
      : CorpusError("unterminated statement at end of corpus: " + fragment), fragment_(std::move(fragment)) {}
  const std::string& fragment() const { return fragment_; }

 private:
  std::string fragment_;
};

// Splits on semicolons outside quotes and parentheses. Each statement keeps its
// semicolon, has whitespace runs outside quotes collapsed to one space, and
// empty statements are dropped.
std::vector<std::string> split_statements(std::string_view text);
std::vector<std::string> load_sql_corpus(const std::filesystem::path& path);
// One statement per line.
std::string serialize_sql_corpus(const std::vector<std::string>& statements);

// JSON array of {"Item", "Narrations", "SQL Queries"} objects.
std::vector<NlPair> parse_pairs(std::string_view json);
std::vector<NlPair> load_pairs(const std::filesystem::path& path);
std::string serialize_pairs(const std::vector<NlPair>& pairs);

struct CurationEntry {
  int item = 0;
  std::string reason;
  bool operator==(const CurationEntry&) const = default;
};

// item<TAB>reason lines; '#' starts a comment line.
std::vector<CurationEntry> parse_curation(std::string_view text);
std::vector<CurationEntry> load_curation(const std::filesystem::path& path);
std::vector<NlPair> exclude(const std::vector<NlPair>& pairs, const std::vector<CurationEntry>& curation);

struct ExpectedVerdict {
  std::size_t index = 0;  // 1-based position in the corpus
  Outcome outcome = Outcome::Failed;
  std::string why;
  bool operator==(const ExpectedVerdict&) const = default;
};

// index<TAB>recognized|nested|failed[<TAB>why] lines.
std::vector<ExpectedVerdict> parse_expected_verdicts(std::string_view text);
std::vector<ExpectedVerdict> load_expected_verdicts(const std::filesystem::path& path);

std::string_view to_string(Outcome outcome);

// Percentage of num/den rounded half up to two decimals, e.g. "96.48".
// Empty when den is zero.
std::string percent(std::size_t num, std::size_t den);

enum class ReportMode { Narrate, Synthesize };

struct ReportFailure {
  std::size_t index = 0;  // 1-based statement position or pair item
  std::string reason;
};

struct Report {
  ReportMode mode = ReportMode::Narrate;
  std::size_t total = 0;
  std::size_t hits = 0;    // recognised statements or matched pairs
  std::size_t nested = 0;  // narrate mode only
  std::size_t failed = 0;
  std::size_t unmatchable = 0;  // synthesize mode only
  bool defined = false;         // false when total is zero
  std::string ratio;            // percent(hits, total)
  std::vector<ReportFailure> breakdown;
};

Report accuracy_report(const RecognitionReport& recognition);
Report accuracy_report(const Accuracy& accuracy);

std::string to_text(const Report& r);
// {total, recognized|matched, nested, failed, ratio}; ratio is null when undefined.
std::string to_json(const Report& r);

}  // namespace narsql
