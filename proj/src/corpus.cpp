#include "narsql/corpus.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "narsql/text.hpp"

namespace narsql {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::string> split_statements(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  char quote = 0;
  int depth = 0;
  bool pending_space = false;
  for (const char c : text) {
    if (quote) {
      current += c;
      if (c == quote) quote = 0;
      continue;
    }
    if (is_space(c)) {
      pending_space = !current.empty();
      continue;
    }
    if (pending_space) current += ' ';
    pending_space = false;
    current += c;
    if (c == '\'' || c == '"' || c == '`') {
      quote = c;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')' && depth > 0) {
      --depth;
    } else if (c == ';' && depth == 0) {
      if (current != ";") out.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) throw DanglingFragment(current);
  return out;
}

std::vector<std::string> load_sql_corpus(const std::filesystem::path& path) {
  return split_statements(read_file(path));
}

std::string serialize_sql_corpus(const std::vector<std::string>& statements) {
  std::string out;
  for (const auto& s : statements) out += s + "\n";
  return out;
}

std::vector<NlPair> parse_pairs(std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorpusError(std::string("pair corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw CorpusError("pair corpus must be a JSON array");
  std::vector<NlPair> pairs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    const auto where = "pair at index " + std::to_string(i);
    if (!obj.is_object()) throw CorpusError(where + " is not an object");
    for (const char* field : {"Item", "Narrations", "SQL Queries"}) {
      if (!obj.contains(field)) throw CorpusError(where + " lacks \"" + field + "\"");
    }
    if (!obj["Item"].is_number_integer() || !obj["Narrations"].is_string() || !obj["SQL Queries"].is_string()) {
      throw CorpusError(where + " has a field of the wrong type");
    }
    pairs.push_back({obj["Item"].get<int>(), obj["Narrations"].get<std::string>(), obj["SQL Queries"].get<std::string>()});
  }
  return pairs;
}

std::vector<NlPair> load_pairs(const std::filesystem::path& path) { return parse_pairs(read_file(path)); }

std::string serialize_pairs(const std::vector<NlPair>& pairs) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& p : pairs) {
    doc.push_back({{"Item", p.item}, {"Narrations", p.narration}, {"SQL Queries", p.gold_sql}});
  }
  return doc.dump(1) + "\n";
}

std::vector<CurationEntry> parse_curation(std::string_view source) {
  std::vector<CurationEntry> out;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(source, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    try {
      out.push_back({std::stoi(line.substr(0, tab)), tab == std::string::npos ? "" : text::trim(line.substr(tab + 1))});
    } catch (const std::logic_error&) {
      throw CorpusError("bad item number on curation line " + std::to_string(line_no));
    }
  }
  return out;
}

std::vector<CurationEntry> load_curation(const std::filesystem::path& path) { return parse_curation(read_file(path)); }

std::vector<NlPair> exclude(const std::vector<NlPair>& pairs, const std::vector<CurationEntry>& curation) {
  std::set<int> drop;
  for (const auto& c : curation) drop.insert(c.item);
  std::vector<NlPair> out;
  for (const auto& p : pairs) {
    if (!drop.count(p.item)) out.push_back(p);
  }
  return out;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Recognized: return "recognized";
    case Outcome::Nested: return "nested";
    case Outcome::Failed: return "failed";
  }
  return "failed";
}

std::vector<ExpectedVerdict> parse_expected_verdicts(std::string_view source) {
  std::vector<ExpectedVerdict> out;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(source, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split(line, '\t');
    const auto where = " on verdict line " + std::to_string(line_no);
    if (fields.size() < 2) throw CorpusError("expected index and outcome" + where);
    ExpectedVerdict v;
    try {
      v.index = std::stoul(fields[0]);
    } catch (const std::logic_error&) {
      throw CorpusError("bad index" + where);
    }
    const auto outcome = text::trim(fields[1]);
    if (outcome == "recognized") v.outcome = Outcome::Recognized;
    else if (outcome == "nested") v.outcome = Outcome::Nested;
    else if (outcome == "failed") v.outcome = Outcome::Failed;
    else throw CorpusError("unknown outcome '" + outcome + "'" + where);
    if (fields.size() > 2) v.why = text::trim(fields[2]);
    out.push_back(v);
  }
  return out;
}

std::vector<ExpectedVerdict> load_expected_verdicts(const std::filesystem::path& path) {
  return parse_expected_verdicts(read_file(path));
}

std::string percent(std::size_t num, std::size_t den) {
  if (den == 0) return {};
  const unsigned long long hundredths = (10000ULL * num + den / 2) / den;
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(hundredths / 100) + "." + frac;
}

Report accuracy_report(const RecognitionReport& recognition) {
  Report r;
  r.mode = ReportMode::Narrate;
  r.total = recognition.total();
  r.hits = recognition.recognized;
  r.nested = recognition.nested;
  r.failed = recognition.failed;
  r.defined = r.total > 0;
  r.ratio = percent(r.hits, r.total);
  for (std::size_t i = 0; i < recognition.verdicts.size(); ++i) {
    const auto& v = recognition.verdicts[i];
    if (v.outcome != Outcome::Recognized) r.breakdown.push_back({i + 1, std::string(to_string(v.outcome)) + ": " + v.reason});
  }
  return r;
}

Report accuracy_report(const Accuracy& accuracy) {
  Report r;
  r.mode = ReportMode::Synthesize;
  r.total = accuracy.total;
  r.hits = accuracy.matched;
  r.failed = accuracy.total - accuracy.matched;
  r.unmatchable = accuracy.unmatchable;
  r.defined = accuracy.defined;
  r.ratio = percent(r.hits, r.total);
  for (const auto& o : accuracy.outcomes) {
    if (o.matched) continue;
    std::string why = !o.gold_parses ? "gold SQL does not parse: " + o.error
                      : !o.error.empty() ? o.error
                                         : "synthesised " + o.synthesized;
    r.breakdown.push_back({static_cast<std::size_t>(o.item), why});
  }
  return r;
}

std::string to_text(const Report& r) {
  const bool narrate = r.mode == ReportMode::Narrate;
  std::ostringstream out;
  out << "total: " << r.total << "\n"
      << (narrate ? "recognized: " : "matched: ") << r.hits << "\n";
  if (narrate) out << "nested: " << r.nested << "\n";
  out << "failed: " << r.failed << "\n";
  if (!narrate) out << "unmatchable: " << r.unmatchable << "\n";
  out << "accuracy: " << (r.defined ? r.ratio + "%" : "undefined") << "\n";
  for (const auto& f : r.breakdown) out << "  " << f.index << ": " << f.reason << "\n";
  return out.str();
}

std::string to_json(const Report& r) {
  const bool narrate = r.mode == ReportMode::Narrate;
  nlohmann::ordered_json doc;
  doc["total"] = r.total;
  doc[narrate ? "recognized" : "matched"] = r.hits;
  doc["nested"] = r.nested;
  doc["failed"] = r.failed;
  if (!narrate) doc["unmatchable"] = r.unmatchable;
  doc["ratio"] = r.defined ? nlohmann::ordered_json(r.ratio) : nlohmann::ordered_json(nullptr);
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : r.breakdown) failures.push_back({{"index", f.index}, {"reason", f.reason}});
  doc["breakdown"] = failures;
  return doc.dump(2) + "\n";
}

}  // namespace narsql
