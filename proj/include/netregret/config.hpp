#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace netregret {

/// Key/value document:
///
///   # comment
///   key = 1.5            (number)
///   key = "text"         (string)
///   key = true           (boolean)
///   key = [0.1, 0.2]     (array of numbers)
///   [section]            (later keys become "section.key")
///
/// Keys are [A-Za-z0-9_.-]+; redefinition is an error.
class Config {
 public:
  using Value = std::variant<double, std::string, bool, std::vector<double>>;

  static Config parse(const std::string& text, const std::string& source = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::vector<double> array(const std::string& key) const;

  /// Distinct section names directly below `prefix` ("learner" -> {"dftrl", ...}).
  std::vector<std::string> subsections(const std::string& prefix) const;
  const std::map<std::string, Value>& values() const { return values_; }

  /// Keys never read through an accessor, sorted.
  std::vector<std::string> unused_keys() const;

  void set(const std::string& key, Value v) { values_[key] = std::move(v); }

 private:
  const Value& get(const std::string& key) const;

  std::map<std::string, Value> values_;
  std::string source_;
  mutable std::set<std::string> used_;
};

}  // namespace netregret
