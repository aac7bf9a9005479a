#include "narsql/vocabulary.hpp"

#include <fstream>
#include <sstream>

#include "embedded_data.hpp"
#include "narsql/text.hpp"

namespace narsql {

std::string fill_template(std::string_view tmpl, const TemplateArgs& args) {
  std::string out;
  out.reserve(tmpl.size() + 32);
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if (c == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      out += '{';
      ++i;
    } else if (c == '}' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
      out += '}';
      ++i;
    } else if (c == '{') {
      const auto close = tmpl.find('}', i);
      if (close == std::string_view::npos) throw std::logic_error("unclosed placeholder in template");
      const auto name = tmpl.substr(i + 1, close - i - 1);
      const auto it = args.find(name);
      if (it == args.end()) throw std::logic_error("no value for placeholder {" + std::string(name) + "}");
      out += it->second;
      i = close;
    } else {
      out += c;
    }
  }
  return out;
}

Vocabulary Vocabulary::parse(std::string_view text) {
  Vocabulary v;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(text, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    // Keys may themselves contain '=' (operator entries), so " = " is the
    // preferred separator.
    auto sep = line.find(" = ");
    std::size_t width = 3;
    if (sep == std::string::npos) {
      sep = line.find('=');
      width = 1;
    }
    if (sep == std::string::npos || sep == 0) {
      throw VocabularyError("vocabulary line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = text::trim(line.substr(0, sep));
    auto value = text::trim(line.substr(sep + width));
    v.entries_[std::move(key)] = std::move(value);
  }
  return v;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw VocabularyError("cannot read vocabulary file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Vocabulary& Vocabulary::builtin() {
  static const Vocabulary v = parse(embedded::kVocabulary);
  return v;
}

bool Vocabulary::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

const std::string& Vocabulary::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw VocabularyError("vocabulary has no entry '" + std::string(key) + "'");
  return it->second;
}

std::string Vocabulary::fill(std::string_view key, const TemplateArgs& args) const {
  return fill_template(get(key), args);
}

void Vocabulary::require(const std::vector<std::string>& keys) const {
  std::vector<std::string> missing;
  for (const auto& k : keys) {
    if (!contains(k)) missing.push_back(k);
  }
  if (!missing.empty()) throw VocabularyError("vocabulary is missing: " + text::join(missing, ", "));
}

}  // namespace narsql
