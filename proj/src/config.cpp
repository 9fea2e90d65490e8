#include "netregret/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "netregret/errors.hpp"

namespace netregret {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'))
      return false;
  return true;
}

bool parse_number(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Drop a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) fail("bad section name '" + section + "'");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail("bad key '" + key + "'");
    if (!section.empty()) key = section + "." + key;
    if (cfg.values_.count(key)) fail("key '" + key + "' defined twice");
    if (val.empty()) fail("missing value for '" + key + "'");

    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') fail("unterminated string");
      cfg.values_[key] = val.substr(1, val.size() - 2);
    } else if (val == "true" || val == "false") {
      cfg.values_[key] = (val == "true");
    } else if (val.front() == '[') {
      if (val.back() != ']') fail("unterminated array");
      std::vector<double> items;
      std::string body = val.substr(1, val.size() - 2);
      std::stringstream parts(body);
      std::string item;
      while (std::getline(parts, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        double x;
        if (!parse_number(item, x)) fail("array element '" + item + "' is not a number");
        items.push_back(x);
      }
      cfg.values_[key] = std::move(items);
    } else {
      double x;
      if (!parse_number(val, x)) fail("value '" + val + "' is not a number, string, boolean or array");
      cfg.values_[key] = x;
    }
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const Config::Value& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(source_ + ": missing key '" + key + "'");
  used_.insert(key);
  return it->second;
}

double Config::number(const std::string& key) const {
  const auto& v = get(key);
  if (auto p = std::get_if<double>(&v)) return *p;
  throw ConfigError(source_ + ": key '" + key + "' must be a number");
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long Config::integer(const std::string& key) const {
  double x = number(key);
  if (x != std::floor(x) || std::abs(x) > 9.0e15)
    throw ConfigError(source_ + ": key '" + key + "' must be an integer");
  return static_cast<long>(x);
}

long Config::integer(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Config::string(const std::string& key) const {
  const auto& v = get(key);
  if (auto p = std::get_if<std::string>(&v)) return *p;
  throw ConfigError(source_ + ": key '" + key + "' must be a string");
}

std::string Config::string(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

bool Config::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = get(key);
  if (auto p = std::get_if<bool>(&v)) return *p;
  throw ConfigError(source_ + ": key '" + key + "' must be true or false");
}

std::vector<double> Config::array(const std::string& key) const {
  const auto& v = get(key);
  if (auto p = std::get_if<std::vector<double>>(&v)) return *p;
  if (auto p = std::get_if<double>(&v)) return {*p};
  throw ConfigError(source_ + ": key '" + key + "' must be an array of numbers");
}

std::vector<std::string> Config::subsections(const std::string& prefix) const {
  std::set<std::string> names;
  const std::string head = prefix + ".";
  for (const auto& [k, v] : values_) {
    if (k.rfind(head, 0) != 0) continue;
    auto rest = k.substr(head.size());
    auto dot = rest.find('.');
    if (dot != std::string::npos) names.insert(rest.substr(0, dot));
  }
  return {names.begin(), names.end()};
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

}  // namespace netregret
