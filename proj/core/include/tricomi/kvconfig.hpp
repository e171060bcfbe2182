#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tricomi {

/// Flat key = value text with '#' comments. Keys outside the allowed set are rejected.
class KvConfig {
 public:
  static KvConfig parse(std::string_view text, const std::set<std::string>& allowed);
  static KvConfig load(const std::string& path, const std::set<std::string>& allowed);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> text(const std::string& key) const;

  // Typed getters throw ValidationError on malformed values.
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  /// Comma or whitespace separated numbers.
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace tricomi
