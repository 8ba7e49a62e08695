#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tvp {

// Flat key-value configuration (TOML subset): `key = value` lines with dotted
// keys, '#' comments, booleans, numbers, quoted strings, and [a, b, c] arrays.
// A bare [section] header prefixes subsequent keys.
class Config {
 public:
  using Value = std::variant<bool, double, std::string, std::vector<double>,
                             std::vector<std::string>>;

  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  bool get_bool(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;

  bool get_or(const std::string& key, bool fallback) const;
  double get_or(const std::string& key, double fallback) const;
  long get_or(const std::string& key, long fallback) const;
  int get_or(const std::string& key, int fallback) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;

  const std::map<std::string, Value>& entries() const { return values_; }

 private:
  const Value& require(const std::string& key) const;
  std::map<std::string, Value> values_;
};

}  // namespace tvp
