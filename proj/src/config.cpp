#include "infswitch/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "infswitch/errors.hpp"

extern char** environ;

namespace infswitch {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  if (!items.empty() && items.back().empty()) items.pop_back();
  return items;
}

double parse_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE ||
      text.find('-') != std::string::npos)
    throw ConfigError("key '" + key + "': cannot parse '" + text +
                      "' as an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    if (cfg.entries_.count(key) != 0)
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    cfg.entries_[key] = value;
  }
  return cfg;
}

void Config::apply_env_overrides(const std::string& prefix) {
  for (char** env = environ; *env != nullptr; ++env) {
    const std::string entry(*env);
    if (entry.rfind(prefix, 0) != 0) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) continue;
    std::string key = entry.substr(prefix.size(), eq - prefix.size());
    std::size_t pos;
    while ((pos = key.find("__")) != std::string::npos) key.replace(pos, 2, ".");
    if (key.empty()) continue;
    entries_[key] = entry.substr(eq + 1);
  }
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool Config::contains(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string Config::raw(const std::string& key) {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError("missing required config key '" + key + "'");
  resolved_[key] = it->second;
  return it->second;
}

std::string Config::require_string(const std::string& key) { return raw(key); }

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  const std::string value = it == entries_.end() ? fallback : it->second;
  resolved_[key] = value;
  return value;
}

double Config::require_double(const std::string& key) {
  return parse_double(key, raw(key));
}

double Config::get_double(const std::string& key, double fallback) {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    std::ostringstream os;
    os.precision(17);
    os << fallback;
    resolved_[key] = os.str();
    return fallback;
  }
  resolved_[key] = it->second;
  return parse_double(key, it->second);
}

double Config::get_double_or_inf(const std::string& key, double fallback) {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  std::string text;
  if (it == entries_.end()) {
    if (std::isinf(fallback)) {
      resolved_[key] = "inf";
      return fallback;
    }
    std::ostringstream os;
    os.precision(17);
    os << fallback;
    resolved_[key] = os.str();
    return fallback;
  }
  text = it->second;
  resolved_[key] = text;
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity")
    return std::numeric_limits<double>::infinity();
  return parse_double(key, text);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    resolved_[key] = std::to_string(fallback);
    return fallback;
  }
  resolved_[key] = it->second;
  return parse_u64(key, it->second);
}

std::uint64_t Config::require_u64(const std::string& key) {
  return parse_u64(key, raw(key));
}

bool Config::get_bool(const std::string& key, bool fallback) {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    resolved_[key] = fallback ? "true" : "false";
    return fallback;
  }
  resolved_[key] = it->second;
  std::string lower = it->second;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "true" || lower == "1" || lower == "yes") return true;
  if (lower == "false" || lower == "0" || lower == "no") return false;
  throw ConfigError("key '" + key + "': cannot parse '" + it->second +
                    "' as a boolean");
}

std::vector<double> Config::require_double_list(const std::string& key) {
  const std::string text = raw(key);
  std::vector<double> values;
  for (const std::string& item : split_list(text))
    values.push_back(parse_double(key, item));
  if (values.empty()) throw ConfigError("key '" + key + "': empty list");
  return values;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) {
  consumed_.insert(key);
  if (entries_.count(key) == 0) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < fallback.size(); ++i)
      os << (i == 0 ? "" : ",") << fallback[i];
    resolved_[key] = os.str();
    return fallback;
  }
  return require_double_list(key);
}

std::vector<std::uint64_t> Config::get_u64_list(
    const std::string& key, const std::vector<std::uint64_t>& fallback) {
  consumed_.insert(key);
  if (entries_.count(key) == 0) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fallback.size(); ++i)
      os << (i == 0 ? "" : ",") << fallback[i];
    resolved_[key] = os.str();
    return fallback;
  }
  const std::string text = raw(key);
  std::vector<std::uint64_t> values;
  for (const std::string& item : split_list(text))
    values.push_back(parse_u64(key, item));
  if (values.empty()) throw ConfigError("key '" + key + "': empty list");
  return values;
}

std::vector<std::string> Config::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) {
  consumed_.insert(key);
  if (entries_.count(key) == 0) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fallback.size(); ++i)
      os << (i == 0 ? "" : ",") << fallback[i];
    resolved_[key] = os.str();
    return fallback;
  }
  const std::string text = raw(key);
  return split_list(text);
}

void Config::assert_fully_consumed() const {
  std::string unknown;
  for (const auto& [key, value] : entries_) {
    if (consumed_.count(key) == 0) {
      if (!unknown.empty()) unknown += ", ";
      unknown += "'" + key + "'";
    }
  }
  if (!unknown.empty())
    throw ConfigError("unknown config key(s): " + unknown);
}

}  // namespace infswitch
