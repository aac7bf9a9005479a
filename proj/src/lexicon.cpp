#include "narsql/lexicon.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "embedded_data.hpp"
#include "narsql/text.hpp"

namespace narsql {

namespace {

std::string normalise_phrase(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(text::to_lower(w));
  return text::join(words, " ");
}

bool is_action_keyword(std::string_view k) {
  return k == "SELECT" || k == "INSERT" || k == "UPDATE" || k == "DELETE" || k == "CREATE";
}

}  // namespace

Lexicon Lexicon::parse(std::string_view source) {
  Lexicon lex;
  std::map<std::string, int> column_ids;  // folded canonical -> index
  std::map<std::string, int> table_ids;
  const auto id_for = [](std::map<std::string, int>& ids, const std::string& name) {
    const auto key = name == kAllColumns ? name : text::fold_identifier(name);
    const auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
    return it->second;
  };
  std::string section;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(source, '\n')) {
    ++line_no;
    const auto line = text::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto where = " on lexicon line " + std::to_string(line_no);
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      if (section != "actions" && section != "columns" && section != "tables" && section != "stopwords") {
        throw LexiconError("unknown section [" + section + "]" + where);
      }
      continue;
    }
    if (section.empty()) throw LexiconError("entry outside a section" + where);
    if (section == "stopwords") {
      std::istringstream in(line);
      for (std::string w; in >> w;) lex.stopwords_.insert(text::to_lower(w));
      continue;
    }
    const auto eq = line.find('=');
    std::string trigger = normalise_phrase(eq == std::string::npos ? line : line.substr(0, eq));
    std::string target = text::trim(eq == std::string::npos ? line : line.substr(eq + 1));
    if (trigger.empty() || target.empty()) throw LexiconError("empty trigger or target" + where);
    if (section == "actions") {
      if (!is_action_keyword(target)) throw LexiconError("unknown action keyword " + target + where);
      lex.actions_.push_back({trigger, target, static_cast<int>(lex.actions_.size())});
    } else if (section == "columns") {
      std::optional<std::string> hint;
      if (const auto dot = target.find('.'); dot != std::string::npos) {
        hint = target.substr(0, dot);
        target = target.substr(dot + 1);
      }
      const int id = id_for(column_ids, target);
      lex.columns_.push_back({trigger, target, hint, id});
    } else {
      const int id = id_for(table_ids, target);
      lex.tables_.push_back({trigger, target, id});
    }
  }
  lex.column_count_ = static_cast<int>(column_ids.size());
  lex.table_count_ = static_cast<int>(table_ids.size());
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot read lexicon file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = parse(embedded::kLexicon);
  return lex;
}

const ActionTrigger* Lexicon::find_action(std::string_view phrase) const {
  for (const auto& a : actions_) {
    if (text::loosely_equal(a.trigger, phrase)) return &a;
  }
  return nullptr;
}

std::vector<const ColumnTrigger*> Lexicon::find_columns(std::string_view phrase) const {
  std::vector<const ColumnTrigger*> out;
  for (const auto& c : columns_) {
    if (text::loosely_equal(c.trigger, phrase)) out.push_back(&c);
  }
  return out;
}

const TableTrigger* Lexicon::find_table(std::string_view phrase) const {
  for (const auto& t : tables_) {
    if (text::loosely_equal(t.trigger, phrase)) return &t;
  }
  return nullptr;
}

bool Lexicon::is_stopword(std::string_view word) const { return stopwords_.count(text::to_lower(word)) > 0; }

int Lexicon::column_index(std::string_view column) const {
  for (const auto& c : columns_) {
    if (column == kAllColumns ? c.column == kAllColumns : text::fold_identifier(c.column) == text::fold_identifier(column)) {
      return c.index;
    }
  }
  return -1;
}

int Lexicon::table_index(std::string_view table) const {
  for (const auto& t : tables_) {
    if (text::fold_identifier(t.table) == text::fold_identifier(table)) return t.index;
  }
  return -1;
}

}  // namespace narsql
