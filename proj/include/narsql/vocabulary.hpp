#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace narsql {

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TemplateArgs = std::map<std::string, std::string, std::less<>>;

// Replaces {name} placeholders; "{{" and "}}" yield literal braces. A
// placeholder without an argument is a programming error (std::logic_error).
std::string fill_template(std::string_view tmpl, const TemplateArgs& args);

class Vocabulary {
 public:
  // key = value lines; '#' starts a comment line.
  static Vocabulary parse(std::string_view text);
  static Vocabulary load(const std::filesystem::path& path);
  static const Vocabulary& builtin();

  bool contains(std::string_view key) const;
  const std::string& get(std::string_view key) const;  // throws VocabularyError
  std::string fill(std::string_view key, const TemplateArgs& args) const;

  // Throws VocabularyError naming every key in `keys` that is absent.
  void require(const std::vector<std::string>& keys) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

}  // namespace narsql
