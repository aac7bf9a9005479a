#include "narsql/nl2sql.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "narsql/lexer.hpp"
#include "narsql/recognizer.hpp"
#include "narsql/text.hpp"
#include "overload.hpp"

namespace narsql {

AmbiguousColumn::AmbiguousColumn(std::string column, std::vector<std::string> tables)
    : SynthesisError(SynthesisErrorKind::AmbiguousColumn,
                     "column " + column + " occurs in " + text::join_and(tables, "or")),
      column_(std::move(column)),
      tables_(std::move(tables)) {}

namespace {

constexpr int kMaxPhraseWords = 3;

struct Word {
  std::string text;
  std::string lower;
  bool quoted = false;
  bool capitalized = false;
  bool initial = false;
};

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_number(std::string_view s) {
  if (s.empty()) return false;
  std::size_t dots = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '.') {
      ++dots;
    } else if (!std::isdigit(static_cast<unsigned char>(s[i])) && !(i == 0 && s[i] == '-')) {
      return false;
    }
  }
  return dots <= 1 && s.back() != '.';
}

// Splits on punctuation; quoted spans stay whole, "=" is its own word.
std::vector<Word> split_words(std::string_view raw) {
  std::vector<Word> out;
  std::size_t i = 0;
  const auto push = [&](std::string t, bool quoted) {
    Word w;
    w.lower = text::to_lower(t);
    w.capitalized = !quoted && std::isupper(static_cast<unsigned char>(t[0]));
    w.text = std::move(t);
    w.quoted = quoted;
    w.initial = out.empty();
    out.push_back(std::move(w));
  };
  while (i < raw.size()) {
    const char c = raw[i];
    if ((c == '\'' || c == '"') && (i == 0 || !is_word_char(raw[i - 1]))) {
      const auto close = raw.find(c, i + 1);
      if (close != std::string_view::npos && close > i + 1) {
        push(std::string(raw.substr(i + 1, close - i - 1)), true);
        i = close + 1;
        continue;
      }
      ++i;
    } else if (c == '=') {
      push("=", false);
      ++i;
    } else if (is_word_char(c)) {
      std::size_t j = i;
      while (j < raw.size()) {
        if (is_word_char(raw[j])) {
          ++j;
        } else if (raw[j] == '.' && j + 1 < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j + 1])) &&
                   is_number(raw.substr(i, j - i))) {
          ++j;
        } else if (raw[j] == '\'' && j + 1 < raw.size() && std::isalpha(static_cast<unsigned char>(raw[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      push(std::string(raw.substr(i, j - i)), false);
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

bool is_marker(std::string_view lower) {
  return lower == "is" || lower == "equals" || lower == "equal" || lower == "to" || lower == "=";
}

std::string fold(std::string_view s) { return text::fold_identifier(s); }

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::none_of(v.begin(), v.end(), [&](const std::string& x) { return fold(x) == fold(s); })) v.push_back(s);
}

class Normalizer {
 public:
  Normalizer(const Translator& tr, std::string_view raw) : tr_(tr), words_(split_words(raw)) { req_.raw = raw; }

  NlRequest run() {
    while (pos_ < words_.size()) step();
    return std::move(req_);
  }

 private:
  // Longest phrase starting at `at` that names a table, column or action.
  std::optional<std::pair<NlItem, std::size_t>> match(std::size_t at) const {
    for (std::size_t n = std::min<std::size_t>(kMaxPhraseWords, words_.size() - at); n >= 1; --n) {
      std::vector<std::string> parts;
      bool plain = true;
      for (std::size_t k = at; k < at + n; ++k) {
        plain = plain && !words_[k].quoted && words_[k].text != "=";
        parts.push_back(words_[k].lower);
      }
      if (!plain) continue;
      const auto phrase = text::join(parts, " ");
      std::vector<std::string> surface;
      for (std::size_t k = at; k < at + n; ++k) surface.push_back(words_[k].text);
      if (auto item = match_phrase(phrase)) {
        item->surface = text::join(surface, " ");
        return std::make_pair(std::move(*item), n);
      }
    }
    return std::nullopt;
  }

  std::optional<NlItem> match_phrase(const std::string& phrase) const {
    const auto& schema = tr_.schema();
    const auto& lex = tr_.lexicon();
    for (const auto& t : schema.tables()) {
      if (text::loosely_equal(phrase, t.name)) return table_item(t.name);
    }
    if (const auto* t = lex.find_table(phrase)) {
      if (const auto* def = schema.find_table(t->table)) return table_item(def->name);
    }
    NlItem col;
    col.kind = NlItemKind::Column;
    for (const auto& t : schema.tables()) {
      for (const auto& c : t.columns) {
        if (text::loosely_equal(phrase, c.name)) add_unique(col.columns, c.name);
      }
    }
    for (const auto* trig : lex.find_columns(phrase)) {
      if (trig->column == Lexicon::kAllColumns) {
        col.columns = {std::string(Lexicon::kAllColumns)};
        col.table_hint.reset();
        break;
      }
      if (schema.tables_with_column(trig->column).empty()) continue;
      add_unique(col.columns, trig->column);
      if (trig->table_hint && schema.find_table(*trig->table_hint) && !col.table_hint) {
        col.table_hint = schema.find_table(*trig->table_hint)->name;
      }
    }
    if (!col.columns.empty()) {
      col.symbol = tr_.column_symbol(col.columns.front());
      return col;
    }
    if (const auto* a = lex.find_action(phrase)) {
      NlItem act;
      act.kind = NlItemKind::Action;
      act.canonical = a->canonical;
      act.symbol = JfaSymbol{SymbolCategory::QueryType, a->index};
      return act;
    }
    return std::nullopt;
  }

  NlItem table_item(const std::string& name) const {
    NlItem t;
    t.kind = NlItemKind::Table;
    t.canonical = name;
    t.symbol = tr_.table_symbol(name);
    return t;
  }

  bool is_free(std::size_t at) const {
    const auto& w = words_[at];
    return !w.quoted && !is_marker(w.lower) && !tr_.lexicon().is_stopword(w.lower) && !match(at);
  }

  // Capitalised words that name nothing, starting at pos_.
  std::string take_capitalized_span() {
    std::vector<std::string> parts{words_[pos_++].text};
    while (pos_ < words_.size() && words_[pos_].capitalized && is_free(pos_)) parts.push_back(words_[pos_++].text);
    return text::join(parts, " ");
  }

  void push_value(std::string value, std::string marker, bool quoted) {
    NlItem v;
    v.kind = NlItemKind::Value;
    v.surface = value;
    v.canonical = std::move(value);
    v.marker = std::move(marker);
    v.quoted = quoted;
    req_.items.push_back(std::move(v));
  }

  void push_symbol(NlItem item, std::size_t words) {
    std::vector<std::string> lower;
    for (std::size_t k = pos_; k < pos_ + words; ++k) lower.push_back(words_[k].lower);
    req_.content_tokens.push_back(text::join(lower, " "));
    req_.symbols.push_back(*item.symbol);
    req_.items.push_back(std::move(item));
    pos_ += words;
  }

  void step() {
    const auto& w = words_[pos_];
    if (w.quoted) {
      push_value(w.text, "", true);
      ++pos_;
      return;
    }
    if (is_marker(w.lower)) {
      const auto marker = w.lower;
      std::size_t next = pos_;
      while (next < words_.size() && !words_[next].quoted && is_marker(words_[next].lower)) ++next;
      if (next < words_.size()) {
        const auto& v = words_[next];
        if (v.quoted || is_number(v.text) || is_free(next)) {
          pos_ = next;
          if (v.quoted || is_number(v.text) || !v.capitalized) {
            push_value(v.text, marker, v.quoted);
            ++pos_;
          } else {
            push_value(take_capitalized_span(), marker, false);
          }
          return;
        }
      }
      pos_ = next;  // a marker with no value after it carries no meaning
      return;
    }
    if (auto m = match(pos_)) {
      push_symbol(std::move(m->first), m->second);
      return;
    }
    if (tr_.lexicon().is_stopword(w.lower)) {
      ++pos_;
      return;
    }
    if (w.capitalized && !w.initial) {
      push_value(take_capitalized_span(), "", false);
      return;
    }
    if (w.lower == "and" || w.lower == "or") {
      NlItem c;
      c.kind = NlItemKind::Conjunction;
      c.surface = w.text;
      c.canonical = w.lower;
      req_.items.push_back(std::move(c));
    }
    req_.content_tokens.push_back(w.lower);
    req_.unresolved.push_back(w.lower);
    ++pos_;
  }

  const Translator& tr_;
  std::vector<Word> words_;
  std::size_t pos_ = 0;
  NlRequest req_;
};

bool is_all(const NlItem& item) {
  return item.kind == NlItemKind::Column && item.columns.size() == 1 && item.columns[0] == Lexicon::kAllColumns;
}

std::optional<std::string> resolve_in(const TableDef& t, const NlItem& column) {
  for (const auto& name : column.columns) {
    if (const auto* c = t.find_column(name)) return c->name;
  }
  return std::nullopt;
}

struct Binding {
  std::size_t column_item;
  std::size_t value_item;
};

Literal make_literal(const NlItem& value, const DataType& type) {
  const auto& t = value.canonical;
  if (!value.quoted) {
    const auto lower = text::to_lower(t);
    if (type.kind == DataTypeKind::Bool && (lower == "true" || lower == "false")) return {LiteralType::Bool, lower};
    if ((type.kind == DataTypeKind::Int || type.kind == DataTypeKind::Float) && is_number(t)) {
      return {t.find('.') == std::string::npos ? LiteralType::Int : LiteralType::Float, t};
    }
  }
  return {LiteralType::Varchar, t};
}

}  // namespace

Translator::Translator(Lexicon lexicon, Schema schema)
    : lexicon_(std::move(lexicon)),
      schema_(std::move(schema)),
      machine_({"start"}, {}, {}, "start", {}) {
  for (const auto& t : schema_.tables()) {
    if (lexicon_.table_index(t.name) < 0) add_unique(extra_tables_, fold(t.name));
    for (const auto& c : t.columns) {
      if (lexicon_.column_index(c.name) < 0) add_unique(extra_columns_, fold(c.name));
    }
  }
  machine_ = build_machine();
}

JfaSymbol Translator::column_symbol(std::string_view column) const {
  if (const int i = lexicon_.column_index(column); i >= 0) return {SymbolCategory::ColumnType, i};
  const auto it = std::find(extra_columns_.begin(), extra_columns_.end(), fold(column));
  if (it == extra_columns_.end()) throw std::invalid_argument("no symbol for column " + std::string(column));
  return {SymbolCategory::ColumnType, lexicon_.column_symbol_count() + static_cast<int>(it - extra_columns_.begin())};
}

JfaSymbol Translator::table_symbol(std::string_view table) const {
  if (const int i = lexicon_.table_index(table); i >= 0) return {SymbolCategory::EntityType, i};
  const auto it = std::find(extra_tables_.begin(), extra_tables_.end(), fold(table));
  if (it == extra_tables_.end()) throw std::invalid_argument("no symbol for table " + std::string(table));
  return {SymbolCategory::EntityType, lexicon_.table_symbol_count() + static_cast<int>(it - extra_tables_.begin())};
}

// One action keyword, any number of column symbols and one table (possibly
// named more than once), read in any order: start -a-> act(K) -c-> fin(K,c),
// with column and same-keyword action loops on both.
JfaMachine Translator::build_machine() const {
  std::set<JfaSymbol> alphabet;
  std::vector<JfaSymbol> columns, tables;
  const int n_columns = lexicon_.column_symbol_count() + static_cast<int>(extra_columns_.size());
  const int n_tables = lexicon_.table_symbol_count() + static_cast<int>(extra_tables_.size());
  for (int i = 0; i < n_columns; ++i) columns.push_back({SymbolCategory::ColumnType, i});
  for (int i = 0; i < n_tables; ++i) tables.push_back({SymbolCategory::EntityType, i});
  alphabet.insert(columns.begin(), columns.end());
  alphabet.insert(tables.begin(), tables.end());

  std::vector<std::string> states{"start"};
  std::set<std::string> finals;
  std::vector<JfaRule> rules;
  std::map<std::string, std::vector<JfaSymbol>> by_keyword;
  for (const auto& a : lexicon_.actions()) {
    const JfaSymbol s{SymbolCategory::QueryType, a.index};
    alphabet.insert(s);
    by_keyword[a.canonical].push_back(s);
  }
  for (const auto& [keyword, actions] : by_keyword) {
    const auto act = "act:" + keyword;
    states.push_back(act);
    for (const auto& a : actions) {
      rules.push_back({"start", a, act});
      rules.push_back({act, a, act});
    }
    for (const auto& b : columns) rules.push_back({act, b, act});
    for (const auto& c : tables) {
      const auto fin = "fin:" + keyword + ":" + to_string(c);
      states.push_back(fin);
      finals.insert(fin);
      rules.push_back({act, c, fin});
      rules.push_back({fin, c, fin});
      for (const auto& a : actions) rules.push_back({fin, a, fin});
      for (const auto& b : columns) rules.push_back({fin, b, fin});
    }
  }
  return JfaMachine(std::move(states), std::move(alphabet), std::move(rules), "start", std::move(finals));
}

NlRequest Translator::normalize(std::string_view raw) const { return Normalizer(*this, raw).run(); }

NlRequest Translator::merge(const NlRequest& pending, std::string_view answer) const {
  return normalize(pending.raw + " " + std::string(answer));
}

SqlStatement Translator::synthesize(const NlRequest& req) const {
  const auto& items = req.items;
  const auto action = std::find_if(items.begin(), items.end(), [](const NlItem& i) { return i.kind == NlItemKind::Action; });
  if (action == items.end()) throw MissingAction();

  // Each value belongs to the nearest unbound column before it.
  std::vector<Binding> bindings;
  std::vector<bool> bound(items.size(), false);
  for (std::size_t v = 0; v < items.size(); ++v) {
    if (items[v].kind != NlItemKind::Value) continue;
    for (std::size_t c = v; c-- > 0;) {
      if (items[c].kind == NlItemKind::Column && !is_all(items[c]) && !bound[c]) {
        bound[c] = true;
        bindings.push_back({c, v});
        break;
      }
    }
  }
  std::vector<std::size_t> column_items;
  bool wants_all = false;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (is_all(items[i])) wants_all = true;
    else if (items[i].kind == NlItemKind::Column) column_items.push_back(i);
  }

  std::vector<JfaSymbol> symbols = req.symbols;
  const TableDef* table = nullptr;
  if (const auto t = std::find_if(items.begin(), items.end(), [](const NlItem& i) { return i.kind == NlItemKind::Table; });
      t != items.end()) {
    table = schema_.find_table(t->canonical);
  } else {
    if (column_items.empty()) {
      if (wants_all) throw MissingTable();
      throw MissingKeywords();
    }
    std::vector<const TableDef*> candidates;
    for (const auto& def : schema_.tables()) {
      if (std::all_of(column_items.begin(), column_items.end(),
                      [&](std::size_t i) { return resolve_in(def, items[i]).has_value(); })) {
        candidates.push_back(&def);
      }
    }
    if (candidates.empty()) throw Rejected("no single table holds every requested column");
    std::vector<std::string> names;
    for (const auto* c : candidates) names.push_back(c->name);
    if (candidates.size() == 1) table = candidates.front();
    for (std::size_t i : column_items) {
      if (table) break;
      if (const auto& hint = items[i].table_hint) {
        for (const auto* c : candidates) {
          if (text::iequals(c->name, *hint)) table = c;
        }
      }
    }
    if (!table) {
      // Prefer the one table where a requested column is the primary key.
      std::vector<const TableDef*> keyed;
      for (const auto* c : candidates) {
        const bool has_key = c->primary_key && std::any_of(column_items.begin(), column_items.end(), [&](std::size_t i) {
                               const auto name = resolve_in(*c, items[i]);
                               return name && text::iequals(*name, *c->primary_key);
                             });
        if (has_key) keyed.push_back(c);
      }
      if (keyed.size() == 1) table = keyed.front();
    }
    if (!table) throw AmbiguousColumn(*resolve_in(*candidates.front(), items[column_items.front()]), names);
    symbols.push_back(table_symbol(table->name));
  }
  if (!table) throw Rejected("unknown table");
  if (!accepts(machine_, symbols)) throw Rejected("the request does not describe one action on one table");

  const auto column_name = [&](std::size_t i) {
    auto name = resolve_in(*table, items[i]);
    if (!name) throw Rejected("table " + table->name + " has no column " + items[i].surface);
    return *name;
  };
  const auto predicate = [&](const Binding& b) {
    const auto name = column_name(b.column_item);
    Predicate p;
    p.column = name;
    p.kind = PredicateKind::Compare;
    p.op = CompareOp::Eq;
    p.values = {make_literal(items[b.value_item], table->find_column(name)->type)};
    return p;
  };
  const auto filter_of = [&](const std::vector<Binding>& conds) -> std::optional<Filter> {
    if (conds.empty()) return std::nullopt;
    if (conds.size() > 2) throw Rejected("at most two conditions are supported");
    Filter f;
    f.first = predicate(conds[0]);
    if (conds.size() == 2) {
      f.conjunction = Conjunction::And;
      for (std::size_t i = conds[0].value_item; i < conds[1].value_item; ++i) {
        if (items[i].kind == NlItemKind::Conjunction && items[i].canonical == "or") f.conjunction = Conjunction::Or;
      }
      f.second = predicate(conds[1]);
    }
    return f;
  };

  const auto& keyword = action->canonical;
  if (keyword == "SELECT") {
    Select s;
    s.table = table->name;
    for (std::size_t i : column_items) {
      if (!bound[i]) add_unique(s.projection.columns, column_name(i));
    }
    s.projection.kind = s.projection.columns.empty() ? ProjectionKind::All : ProjectionKind::Columns;
    s.filter = filter_of(bindings);
    return s;
  }
  if (keyword == "UPDATE") {
    if (bindings.empty()) throw Rejected("an update needs a column and its new value");
    auto set = std::find_if(bindings.begin(), bindings.end(),
                            [&](const Binding& b) { return items[b.value_item].marker == "to"; });
    if (set == bindings.end()) set = bindings.begin();
    const auto assignment = predicate(*set);
    std::vector<Binding> rest;
    for (auto it = bindings.begin(); it != bindings.end(); ++it) {
      if (it != set) rest.push_back(*it);
    }
    return Update{table->name, assignment.column, assignment.values[0], filter_of(rest)};
  }
  if (keyword == "DELETE") {
    if (bindings.empty()) throw Rejected("a delete needs a condition");
    return Delete{table->name, *filter_of(bindings)};
  }
  throw Rejected(keyword + " requests cannot be synthesised from natural language");
}

NlRequest normalize(std::string_view raw, const Lexicon& lexicon, const Schema& schema) {
  return Translator(lexicon, schema).normalize(raw);
}

SqlStatement synthesize(const NlRequest& request, const Lexicon& lexicon, const Schema& schema) {
  return Translator(lexicon, schema).synthesize(request);
}

namespace {

const TableDef* loose_table(const Schema& schema, std::string_view name) {
  for (const auto& t : schema.tables()) {
    if (text::loosely_equal(t.name, name)) return &t;
  }
  return nullptr;
}

}  // namespace

SqlStatement canonicalize(const SqlStatement& s, const Schema& schema) {
  const auto table = [&](std::string& name) -> const TableDef* {
    const auto* t = loose_table(schema, name);
    if (t) name = t->name;
    return t;
  };
  const auto column = [](const TableDef* t, std::string& name) {
    if (!t) return;
    for (const auto& c : t->columns) {
      if (text::loosely_equal(c.name, name)) {
        name = c.name;
        return;
      }
    }
  };
  const auto predicate = [&](const TableDef* t, Predicate& p) { column(t, p.column); };
  const auto filter = [&](const TableDef* t, Filter& f) {
    predicate(t, f.first);
    if (f.second) predicate(t, *f.second);
  };
  SqlStatement out = s;
  std::visit(Overload{
                 [&](Select& q) {
                   const auto* t = table(q.table);
                   for (auto& c : q.projection.columns) column(t, c);
                   if (q.filter) filter(t, *q.filter);
                 },
                 [&](Update& q) {
                   const auto* t = table(q.table);
                   column(t, q.column);
                   if (q.filter) filter(t, *q.filter);
                 },
                 [&](Delete& q) { filter(table(q.table), q.filter); },
                 [&](Insert& q) {
                   const auto* t = table(q.table);
                   for (auto& c : q.columns) column(t, c);
                 },
                 [](auto&) {},
             },
             out);
  return out;
}

Accuracy evaluate_pairs(const std::vector<NlPair>& pairs, const Translator& translator) {
  Accuracy acc;
  acc.total = pairs.size();
  for (const auto& pair : pairs) {
    PairOutcome out;
    out.item = pair.item;
    std::optional<SqlStatement> gold;
    try {
      gold = canonicalize(classify(pair.gold_sql), translator.schema());
    } catch (const std::exception& e) {
      out.gold_parses = false;
      out.error = std::string("gold SQL does not parse: ") + e.what();
      ++acc.unmatchable;
    }
    try {
      const auto got = translator.translate(pair.narration);
      out.synthesized = render(got);
      out.matched = gold && canonicalize(got, translator.schema()) == *gold;
    } catch (const SynthesisError& e) {
      if (out.error.empty()) out.error = e.what();
    }
    if (out.matched) ++acc.matched;
    acc.outcomes.push_back(std::move(out));
  }
  acc.defined = acc.total > 0;
  acc.ratio = acc.defined ? static_cast<double>(acc.matched) / static_cast<double>(acc.total) : 0.0;
  return acc;
}

}  // namespace narsql
