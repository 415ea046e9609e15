#include "nsshock/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nsshock/error.hpp"

namespace nsshock::scenario {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int number = 0;
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << origin << ":" << number << ": " << what;
    throw Error(ErrorKind::ConfigError, os.str());
  };
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) fail("bad section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail("bad key '" + key + "'");
    if (value.empty()) fail("empty value for '" + key + "'");
    if (!section.empty()) key = section + "." + key;
    if (c.values_.count(key)) fail("duplicate key '" + key + "'");
    c.values_[key] = value;
    c.lines_[key] = number;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw Error(ErrorKind::ConfigError, "bad key '" + key + "'");
  values_[key] = value;
}

std::string Config::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorKind::ConfigError, origin_ + ": missing key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const std::string s = raw(key);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw Error(ErrorKind::ConfigError, origin_ + ": '" + key + "' is not a number: " + s);
  }
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::optional<double> Config::find_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

long Config::get_int(const std::string& key) const {
  const std::string s = raw(key);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw Error(ErrorKind::ConfigError, origin_ + ": '" + key + "' is not an integer: " + s);
  }
  return v;
}

long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = raw(key);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw Error(ErrorKind::ConfigError, origin_ + ": '" + key + "' is not a boolean: " + s);
}

std::vector<std::string> Config::indices(const std::string& prefix) const {
  std::vector<std::string> out;
  const std::string p = prefix + ".";
  for (const auto& [k, v] : values_) {
    if (k.compare(0, p.size(), p) != 0) continue;
    const auto dot = k.find('.', p.size());
    if (dot == std::string::npos) continue;
    const std::string idx = k.substr(p.size(), dot - p.size());
    if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
  }
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    const bool na = std::all_of(a.begin(), a.end(), ::isdigit);
    const bool nb = std::all_of(b.begin(), b.end(), ::isdigit);
    if (na && nb && a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

void Config::require_consumed() const {
  std::ostringstream os;
  int unknown = 0;
  for (const auto& [k, v] : values_) {
    if (consumed_.count(k)) continue;
    os << (unknown++ ? ", " : "") << "'" << k << "'";
    const auto line = lines_.find(k);
    if (line != lines_.end()) os << " (line " << line->second << ")";
  }
  if (unknown > 0) throw Error(ErrorKind::ConfigError, origin_ + ": unknown keys " + os.str());
}

std::string Config::to_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << " = " << v << '\n';
  return os.str();
}

}  // namespace nsshock::scenario
