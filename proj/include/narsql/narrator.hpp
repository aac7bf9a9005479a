#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "narsql/ast.hpp"
#include "narsql/vocabulary.hpp"

namespace narsql {

enum class NarrationStyle { Simple, OuterToInner, InnerToOuter, CoJoined };

std::string_view to_string(NarrationStyle style);

struct Narration {
  NarrationStyle style = NarrationStyle::Simple;
  std::string text;
  // Lexemes of the narrated statement in canonical form.
  std::vector<std::string> token_index;
};

class Narrator {
 public:
  // Validates that the vocabulary covers every template the narrator uses.
  explicit Narrator(const Vocabulary& vocabulary = Vocabulary::builtin());

  Narration narrate(const SqlStatement& s) const;
  Narration narrate(const NestedQuery& q, NarrationStyle style) const;
  // OuterToInner, InnerToOuter, CoJoined.
  std::vector<Narration> narrate_all(const NestedQuery& q) const;
  // "where the ..." clause with unquoted values.
  std::string describe_filter(const Filter& f) const;

  static const std::vector<std::string>& required_keys();

 private:
  std::string simple_text(const SqlStatement& s) const;
  std::string nested_text(const NestedQuery& q, NarrationStyle style) const;

  Vocabulary vocab_;
};

Narration narrate_simple(const SqlStatement& s);
Narration narrate_nested(const NestedQuery& q, NarrationStyle style);
std::vector<Narration> narrate_all(const NestedQuery& q);

}  // namespace narsql
