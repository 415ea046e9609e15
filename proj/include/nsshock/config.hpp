#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nsshock::scenario {

/// Flat dotted key/value text:
///
///   # comment
///   [fluid]
///   gamma = 2.0
///   run.t_end = 20      (a dotted key outside any section is also fine)
///
/// Keys inside a section are prefixed with "section.".  Every key must be
/// read by the consumer; leftovers are reported by require_consumed().
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::optional<double> find_double(const std::string& key) const;

  /// Distinct second components of keys "prefix.N.*", numerically sorted.
  std::vector<std::string> indices(const std::string& prefix) const;

  /// Throws ConfigError naming every key that was never read.
  void require_consumed() const;

  const std::map<std::string, std::string>& entries() const { return values_; }
  std::string to_text() const;

 private:
  std::string raw(const std::string& key) const;

  std::string origin_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  mutable std::set<std::string> consumed_;
};

}  // namespace nsshock::scenario
