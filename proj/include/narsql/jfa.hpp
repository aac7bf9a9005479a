#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace narsql {

// a = query type (action), b = column type, c = entity (table).
enum class SymbolCategory { QueryType, ColumnType, EntityType };

struct JfaSymbol {
  SymbolCategory category = SymbolCategory::QueryType;
  int index = 0;
  auto operator<=>(const JfaSymbol&) const = default;
};

std::string to_string(JfaSymbol s);          // "a5"
JfaSymbol parse_symbol(std::string_view text);  // throws JfaError
char category_letter(SymbolCategory c);

class JfaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMachine : public JfaError {
 public:
  using JfaError::JfaError;
};

class UnknownSymbol : public JfaError {
 public:
  explicit UnknownSymbol(JfaSymbol s) : JfaError("symbol " + to_string(s) + " is not in the alphabet") {}
};

class BoundExceeded : public JfaError {
 public:
  BoundExceeded(std::size_t size, std::size_t bound)
      : JfaError("input of length " + std::to_string(size) + " exceeds the permutation bound " +
                 std::to_string(bound)) {}
};

struct JfaRule {
  std::string from;
  JfaSymbol symbol;
  std::string to;
  auto operator<=>(const JfaRule&) const = default;
};

// Every rule reads exactly one symbol. Immutable once built.
class JfaMachine {
 public:
  JfaMachine(std::vector<std::string> states, std::set<JfaSymbol> alphabet, std::vector<JfaRule> rules,
             std::string start, std::set<std::string> finals);

  // Records: state NAME, start NAME, final NAME, rule FROM SYM TO, symbol SYM.
  static JfaMachine parse(std::string_view text);
  static JfaMachine load(const std::filesystem::path& path);
  std::string serialize() const;

  const std::vector<std::string>& states() const { return states_; }
  const std::set<JfaSymbol>& alphabet() const { return alphabet_; }
  const std::vector<JfaRule>& rules() const { return rules_; }
  const std::string& start() const { return start_; }
  const std::set<std::string>& finals() const { return finals_; }

  // Dense views used by the acceptance procedures.
  std::size_t state_count() const { return states_.size(); }
  std::size_t symbol_count() const { return symbols_.size(); }
  std::size_t start_id() const { return start_id_; }
  bool is_final(std::size_t state) const { return final_ids_[state]; }
  // Symbol position in alphabet order; throws UnknownSymbol.
  std::size_t symbol_id(JfaSymbol s) const;
  const std::vector<std::size_t>& targets(std::size_t state, std::size_t symbol) const {
    return delta_[state * symbols_.size() + symbol];
  }

 private:
  std::vector<std::string> states_;
  std::set<JfaSymbol> alphabet_;
  std::vector<JfaRule> rules_;
  std::string start_;
  std::set<std::string> finals_;

  std::vector<JfaSymbol> symbols_;
  std::size_t start_id_ = 0;
  std::vector<bool> final_ids_;
  std::vector<std::vector<std::size_t>> delta_;
};

// True when some order of the input occurrences drives the machine from the
// start state to a final state, each occurrence read exactly once.
bool accepts(const JfaMachine& m, const std::vector<JfaSymbol>& input);

// Tries every distinct permutation with ordinary left-to-right reading.
bool accepts_oracle(const JfaMachine& m, const std::vector<JfaSymbol>& input, std::size_t bound = 8);

}  // namespace narsql
