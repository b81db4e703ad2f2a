#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ibnls/rational.hpp"

namespace ibnls::config {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Entry {
  std::string value;
  int line = 0;
};

// Flat `key = value` configuration with `#` comments and `[section]`
// headers; a key inside [grid] is addressed as "grid.key". Unknown keys are
// hard errors at validation time, duplicates are errors at parse time.
class ConfigMap {
 public:
  static ConfigMap parse(const std::string& text);
  static ConfigMap load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  // typed getters; *_or variants supply defaults, plain variants require
  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& dflt) const;
  Rational get_rational(const std::string& key) const;
  Rational get_rational_or(const std::string& key, const Rational& dflt) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double dflt) const;
  int get_int(const std::string& key) const;
  int get_int_or(const std::string& key, int dflt) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t dflt) const;
  bool get_bool_or(const std::string& key, bool dflt) const;

  // set/override (used to fold command-line flags in); line 0 = synthetic
  void set(const std::string& key, const std::string& value);

  // every key must be in `allowed`; otherwise a ParseError naming the key
  // and its line
  void validate_keys(const std::set<std::string>& allowed) const;

  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  Entry require(const std::string& key) const;
  std::map<std::string, Entry> entries_;
};

}  // namespace ibnls::config
