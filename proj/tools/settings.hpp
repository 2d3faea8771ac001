#pragma once

// Flat key=value settings shared by config files, command-line flags and
// inline overrides. Later sources win: defaults, then --config, then flags,
// then trailing key=value arguments.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace yeelab::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeyInfo {
  std::string key;
  std::string default_value;
  std::string help;
};

class Settings {
 public:
  explicit Settings(std::vector<KeyInfo> keys);

  /// Reads '#' comments, blank lines and key = value lines.
  void load_file(const std::string& path);
  /// "key=value"; the key must be known.
  void apply(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  [[nodiscard]] const std::string& get(const std::string& key) const;
  [[nodiscard]] double number(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  /// Comma-separated numbers.
  [[nodiscard]] std::vector<double> numbers(const std::string& key) const;

  /// Every key in declaration order, re-readable by load_file.
  [[nodiscard]] std::string dump() const;

 private:
  std::vector<KeyInfo> keys_;
  std::map<std::string, std::string> values_;
};

[[nodiscard]] double parse_number(std::string_view text, std::string_view what);

}  // namespace yeelab::cli
