#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace infswitch {

/// Flat `key.path = value` configuration with '#' comments.
///
/// Typed getters record the resolved value (including substituted defaults)
/// so the run manifest can echo the complete effective configuration, and
/// mark keys as consumed so unknown keys can be rejected.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& origin = "<string>");

  /// Overrides any key whose environment variable `<prefix><key>` is set,
  /// with '.' spelled as "__" (INFSWITCH_dynamics__dt=0.05).
  void apply_env_overrides(const std::string& prefix = "INFSWITCH_");

  void set(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const;

  std::string require_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double require_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  /// Accepts "inf" / "infinity" for the switching frequency.
  double get_double_or_inf(const std::string& key, double fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  std::uint64_t require_u64(const std::string& key);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<double> require_double_list(const std::string& key);
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback);
  std::vector<std::uint64_t> get_u64_list(const std::string& key,
                                          const std::vector<std::uint64_t>& fallback);
  std::vector<std::string> get_string_list(const std::string& key,
                                           const std::vector<std::string>& fallback);

  /// Throws ConfigError naming every key that was set but never consumed.
  void assert_fully_consumed() const;

  /// Every key touched so far with its effective value.
  const std::map<std::string, std::string>& resolved() const { return resolved_; }

  const std::string& origin() const { return origin_; }

 private:
  std::string raw(const std::string& key);

  std::string origin_;
  std::map<std::string, std::string> entries_;
  std::set<std::string> consumed_;
  std::map<std::string, std::string> resolved_;
};

}  // namespace infswitch
