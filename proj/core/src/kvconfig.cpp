#include "tricomi/kvconfig.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tricomi/error.hpp"

namespace tricomi {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_number(const std::string& key, std::string_view s) {
  s = trim(s);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ValidationError("config: '" + key + "' is not a number: '" + std::string(s) + "'");
  return out;
}

}  // namespace

KvConfig KvConfig::parse(std::string_view text, const std::set<std::string>& allowed) {
  KvConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
    if (!allowed.count(key)) throw ValidationError("config: unknown key '" + key + "'");
    if (cfg.values_.count(key)) throw ValidationError("config: duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

KvConfig KvConfig::load(const std::string& path, const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), allowed);
}

std::optional<std::string> KvConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double KvConfig::number(const std::string& key, double fallback) const {
  const auto v = text(key);
  return v ? to_number(key, *v) : fallback;
}

int KvConfig::integer(const std::string& key, int fallback) const {
  const auto v = text(key);
  if (!v) return fallback;
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size() || v->empty())
    throw ValidationError("config: '" + key + "' is not an integer: '" + *v + "'");
  return out;
}

bool KvConfig::flag(const std::string& key, bool fallback) const {
  const auto v = text(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ValidationError("config: '" + key + "' is not a boolean: '" + *v + "'");
}

std::string KvConfig::string(const std::string& key, const std::string& fallback) const {
  return text(key).value_or(fallback);
}

std::vector<double> KvConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  const auto v = text(key);
  if (!v) return out;
  std::string item;
  for (char c : *v + ",") {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!item.empty()) out.push_back(to_number(key, item));
      item.clear();
    } else {
      item.push_back(c);
    }
  }
  return out;
}

}  // namespace tricomi
