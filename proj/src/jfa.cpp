#include "narsql/jfa.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "narsql/text.hpp"

namespace narsql {

char category_letter(SymbolCategory c) {
  switch (c) {
    case SymbolCategory::QueryType: return 'a';
    case SymbolCategory::ColumnType: return 'b';
    case SymbolCategory::EntityType: return 'c';
  }
  return '?';
}

std::string to_string(JfaSymbol s) { return category_letter(s.category) + std::to_string(s.index); }

JfaSymbol parse_symbol(std::string_view text) {
  if (text.size() < 2) throw JfaError("bad symbol '" + std::string(text) + "'");
  JfaSymbol s;
  switch (text[0]) {
    case 'a': s.category = SymbolCategory::QueryType; break;
    case 'b': s.category = SymbolCategory::ColumnType; break;
    case 'c': s.category = SymbolCategory::EntityType; break;
    default: throw JfaError("bad symbol category in '" + std::string(text) + "'");
  }
  const auto* first = text.data() + 1;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, s.index);
  if (ec != std::errc() || ptr != last || s.index < 0) throw JfaError("bad symbol index in '" + std::string(text) + "'");
  return s;
}

JfaMachine::JfaMachine(std::vector<std::string> states, std::set<JfaSymbol> alphabet, std::vector<JfaRule> rules,
                       std::string start, std::set<std::string> finals)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      rules_(std::move(rules)),
      start_(std::move(start)),
      finals_(std::move(finals)),
      symbols_(alphabet_.begin(), alphabet_.end()) {
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!ids.emplace(states_[i], i).second) throw InvalidMachine("duplicate state " + states_[i]);
  }
  const auto id_of = [&](const std::string& name) {
    const auto it = ids.find(name);
    if (it == ids.end()) throw InvalidMachine("unknown state " + name);
    return it->second;
  };
  start_id_ = id_of(start_);
  final_ids_.assign(states_.size(), false);
  for (const auto& f : finals_) final_ids_[id_of(f)] = true;

  delta_.assign(states_.size() * symbols_.size(), {});
  for (const auto& r : rules_) {
    const auto from = id_of(r.from);
    const auto to = id_of(r.to);
    if (!alphabet_.count(r.symbol)) throw InvalidMachine("rule symbol " + to_string(r.symbol) + " not in alphabet");
    auto& cell = delta_[from * symbols_.size() + symbol_id(r.symbol)];
    if (std::find(cell.begin(), cell.end(), to) == cell.end()) cell.push_back(to);
  }
}

std::size_t JfaMachine::symbol_id(JfaSymbol s) const {
  const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
  if (it == symbols_.end() || *it != s) throw UnknownSymbol(s);
  return static_cast<std::size_t>(it - symbols_.begin());
}

JfaMachine JfaMachine::parse(std::string_view text) {
  std::vector<std::string> states;
  std::set<std::string> seen;
  std::set<JfaSymbol> alphabet;
  std::vector<JfaRule> rules;
  std::string start;
  std::set<std::string> finals;
  std::size_t line_no = 0;
  const auto add_state = [&](const std::string& s) {
    if (seen.insert(s).second) states.push_back(s);
  };
  for (const auto& raw : text::split(text, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream in(line);
    std::vector<std::string> f;
    for (std::string w; in >> w;) f.push_back(w);
    const auto where = " on line " + std::to_string(line_no);
    if (f[0] == "state" && f.size() == 2) {
      add_state(f[1]);
    } else if (f[0] == "start" && f.size() == 2) {
      if (!start.empty()) throw InvalidMachine("second start state" + where);
      start = f[1];
    } else if (f[0] == "final" && f.size() == 2) {
      finals.insert(f[1]);
    } else if (f[0] == "symbol" && f.size() == 2) {
      alphabet.insert(parse_symbol(f[1]));
    } else if (f[0] == "rule" && f.size() == 4) {
      const auto sym = parse_symbol(f[2]);
      alphabet.insert(sym);
      rules.push_back({f[1], sym, f[3]});
    } else {
      throw InvalidMachine("unrecognised record '" + line + "'" + where);
    }
  }
  if (start.empty()) throw InvalidMachine("machine has no start state");
  return JfaMachine(std::move(states), std::move(alphabet), std::move(rules), std::move(start), std::move(finals));
}

JfaMachine JfaMachine::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw JfaError("cannot read machine file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string JfaMachine::serialize() const {
  std::ostringstream out;
  for (const auto& s : states_) out << "state " << s << '\n';
  out << "start " << start_ << '\n';
  for (const auto& f : finals_) out << "final " << f << '\n';
  std::set<JfaSymbol> used;
  for (const auto& r : rules_) used.insert(r.symbol);
  for (const auto& s : alphabet_) {
    if (!used.count(s)) out << "symbol " << to_string(s) << '\n';
  }
  for (const auto& r : rules_) out << "rule " << r.from << ' ' << to_string(r.symbol) << ' ' << r.to << '\n';
  return out.str();
}

namespace {

// Depth-first search over (state, remaining counts). Only failing
// configurations are memoised; success ends the search immediately.
class JumpSearch {
 public:
  JumpSearch(const JfaMachine& m, std::vector<unsigned> counts) : m_(m), counts_(std::move(counts)) {
    for (auto c : counts_) remaining_ += c;
  }

  bool run() { return visit(m_.start_id()); }

 private:
  bool visit(std::size_t state) {
    if (remaining_ == 0) return m_.is_final(state);
    std::string key = key_for(state);
    if (failed_.count(key)) return false;
    for (std::size_t sym = 0; sym < counts_.size(); ++sym) {
      if (counts_[sym] == 0) continue;
      for (const auto next : m_.targets(state, sym)) {
        --counts_[sym];
        --remaining_;
        const bool ok = visit(next);
        ++counts_[sym];
        ++remaining_;
        if (ok) return true;
      }
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::string key_for(std::size_t state) const {
    std::string key(reinterpret_cast<const char*>(&state), sizeof state);
    for (auto c : counts_) key.append(reinterpret_cast<const char*>(&c), sizeof c);
    return key;
  }

  const JfaMachine& m_;
  std::vector<unsigned> counts_;
  std::size_t remaining_ = 0;
  std::unordered_set<std::string> failed_;
};

}  // namespace

bool accepts(const JfaMachine& m, const std::vector<JfaSymbol>& input) {
  std::vector<unsigned> counts(m.symbol_count(), 0);
  for (const auto& s : input) ++counts[m.symbol_id(s)];
  return JumpSearch(m, std::move(counts)).run();
}

bool accepts_oracle(const JfaMachine& m, const std::vector<JfaSymbol>& input, std::size_t bound) {
  if (input.size() > bound) throw BoundExceeded(input.size(), bound);
  std::vector<std::size_t> word;
  for (const auto& s : input) word.push_back(m.symbol_id(s));
  std::sort(word.begin(), word.end());
  do {
    std::vector<bool> current(m.state_count(), false);
    current[m.start_id()] = true;
    for (const auto sym : word) {
      std::vector<bool> next(m.state_count(), false);
      for (std::size_t q = 0; q < m.state_count(); ++q) {
        if (!current[q]) continue;
        for (const auto t : m.targets(q, sym)) next[t] = true;
      }
      current = std::move(next);
    }
    for (std::size_t q = 0; q < m.state_count(); ++q) {
      if (current[q] && m.is_final(q)) return true;
    }
  } while (std::next_permutation(word.begin(), word.end()));
  return false;
}

}  // namespace narsql
