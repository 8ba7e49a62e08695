#include "tvp/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tvp {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

Config::Value parse_scalar(const std::string& raw, const std::string& key) {
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
    return raw.substr(1, raw.size() - 2);
  double num;
  if (parse_number(raw, num)) return num;
  // bare string
  if (!raw.empty()) return raw;
  throw std::runtime_error("config: empty value for key '" + key + "'");
}

Config::Value parse_value(const std::string& raw, const std::string& key) {
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']')
      throw std::runtime_error("config: unterminated array for key '" + key + "'");
    std::vector<double> nums;
    std::vector<std::string> strs;
    bool numeric = true;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
        numeric = false;
        strs.push_back(item.substr(1, item.size() - 2));
        continue;
      }
      double num;
      if (parse_number(item, num)) {
        nums.push_back(num);
        strs.push_back(item);
      } else {
        numeric = false;
        strs.push_back(item);
      }
    }
    if (numeric) return nums;
    return strs;
  }
  return parse_scalar(raw, key);
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::stringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find(',') == std::string::npos &&
        line.find('=') == std::string::npos) {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config: line " << lineno << " is not 'key = value'";
      throw std::runtime_error(os.str());
    }
    std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << "config: missing key on line " << lineno;
      throw std::runtime_error(os.str());
    }
    if (!section.empty()) key = section + "." + key;
    cfg.values_[key] = parse_value(raw, key);
  }
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

const Config::Value& Config::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("config: missing key '" + key + "'");
  return it->second;
}

bool Config::get_bool(const std::string& key) const {
  const auto& v = require(key);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw std::runtime_error("config: key '" + key + "' is not a boolean");
}

double Config::get_double(const std::string& key) const {
  const auto& v = require(key);
  if (const double* d = std::get_if<double>(&v)) return *d;
  throw std::runtime_error("config: key '" + key + "' is not a number");
}

long Config::get_int(const std::string& key) const {
  const double d = get_double(key);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d)
    throw std::runtime_error("config: key '" + key + "' is not an integer");
  return l;
}

std::string Config::get_string(const std::string& key) const {
  const auto& v = require(key);
  if (const std::string* s = std::get_if<std::string>(&v)) return *s;
  throw std::runtime_error("config: key '" + key + "' is not a string");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  const auto& v = require(key);
  if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
  if (const double* d = std::get_if<double>(&v)) return {*d};
  throw std::runtime_error("config: key '" + key + "' is not a numeric array");
}

std::vector<std::string> Config::get_strings(const std::string& key) const {
  const auto& v = require(key);
  if (const auto* a = std::get_if<std::vector<std::string>>(&v)) return *a;
  if (const std::string* s = std::get_if<std::string>(&v)) return {*s};
  throw std::runtime_error("config: key '" + key + "' is not a string array");
}

bool Config::get_or(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}
double Config::get_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}
long Config::get_or(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}
int Config::get_or(const std::string& key, int fallback) const {
  return has(key) ? static_cast<int>(get_int(key)) : fallback;
}
std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

}  // namespace tvp
