#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace narsql::text {

std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// "a", "a and b", "a, b and c".
std::string join_and(const std::vector<std::string>& items,
                     std::string_view conjunction = "and");
std::string join(const std::vector<std::string>& items, std::string_view sep);

// Lowercase with underscores removed; used for loose identifier matching.
std::string fold_identifier(std::string_view s);

// Crude English singular form of an already-folded word ("cities" -> "city").
std::string singular(std::string_view folded);

// True when two identifiers name the same thing modulo case, underscores
// and singular/plural inflection.
bool loosely_equal(std::string_view a, std::string_view b);

}  // namespace narsql::text
