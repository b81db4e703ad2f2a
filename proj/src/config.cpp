#include "ibnls/config.hpp"

#include <fstream>
#include <sstream>

namespace ibnls::config {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap ConfigMap::parse(const std::string& text) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ParseError("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected `key = value`");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    const auto it = cfg.entries_.find(key);
    if (it != cfg.entries_.end())
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                       "' (first defined at line " + std::to_string(it->second.line) + ")");
    cfg.entries_[key] = Entry{value, lineno};
  }
  return cfg;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Entry ConfigMap::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ParseError("missing required key '" + key + "'");
  return it->second;
}

std::string ConfigMap::get_string(const std::string& key) const { return require(key).value; }

std::string ConfigMap::get_string_or(const std::string& key, const std::string& dflt) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? dflt : it->second.value;
}

Rational ConfigMap::get_rational(const std::string& key) const {
  const Entry e = require(key);
  try {
    return parse_rational(e.value);
  } catch (const std::invalid_argument& ex) {
    throw ParseError("line " + std::to_string(e.line) + ": key '" + key + "': " + ex.what());
  }
}

Rational ConfigMap::get_rational_or(const std::string& key, const Rational& dflt) const {
  return has(key) ? get_rational(key) : dflt;
}

double ConfigMap::get_double(const std::string& key) const {
  const Entry e = require(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(e.line) + ": key '" + key +
                     "': malformed number '" + e.value + "'");
  }
}

double ConfigMap::get_double_or(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

int ConfigMap::get_int(const std::string& key) const {
  const Entry e = require(key);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(e.line) + ": key '" + key +
                     "': malformed integer '" + e.value + "'");
  }
}

int ConfigMap::get_int_or(const std::string& key, int dflt) const {
  return has(key) ? get_int(key) : dflt;
}

std::uint64_t ConfigMap::get_u64_or(const std::string& key, std::uint64_t dflt) const {
  if (!has(key)) return dflt;
  const Entry e = entries_.at(key);
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(e.line) + ": key '" + key +
                     "': malformed integer '" + e.value + "'");
  }
}

bool ConfigMap::get_bool_or(const std::string& key, bool dflt) const {
  if (!has(key)) return dflt;
  const Entry e = entries_.at(key);
  if (e.value == "true" || e.value == "1" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "off") return false;
  throw ParseError("line " + std::to_string(e.line) + ": key '" + key +
                   "': expected boolean, got '" + e.value + "'");
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  entries_[key] = Entry{value, 0};
}

void ConfigMap::validate_keys(const std::set<std::string>& allowed) const {
  for (const auto& [key, entry] : entries_) {
    if (!allowed.count(key))
      throw ParseError("line " + std::to_string(entry.line) + ": unknown key '" + key + "'");
  }
}

}  // namespace ibnls::config
