#pragma once

#include <charconv>
#include <string>

#include "nsshock/scenario.hpp"

namespace nsshock::scenario::detail {

enum class Relation { AtMost, Below, AtLeast };

inline Check make_check(std::string name, std::string property, double value, Relation rel,
                        double threshold) {
  bool ok = false;
  switch (rel) {
    case Relation::AtMost: ok = value <= threshold; break;
    case Relation::Below: ok = value < threshold; break;
    case Relation::AtLeast: ok = value >= threshold; break;
  }
  return {std::move(name), std::move(property), value, threshold, ok};
}

inline nlohmann::ordered_json checks_json(const std::vector<Check>& checks) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    out.push_back({{"name", c.name},
                   {"property", c.property},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"result", c.passed ? "PASS" : "FAIL"}});
  }
  return out;
}

inline bool all_passed(const std::vector<Check>& checks) {
  for (const Check& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

/// Shortest text that reads back to the same double.
inline std::string shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace nsshock::scenario::detail
