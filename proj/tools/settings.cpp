#include "settings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace yeelab::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw UsageError("expected a number for " + std::string(what) + ", got '" + s + "'");
  }
  return v;
}

Settings::Settings(std::vector<KeyInfo> keys) : keys_(std::move(keys)) {
  for (const KeyInfo& k : keys_) {
    values_[k.key] = k.default_value;
  }
}

void Settings::set(const std::string& key, const std::string& value) {
  if (!values_.contains(key)) {
    std::string known;
    for (const KeyInfo& k : keys_) {
      known += (known.empty() ? "" : ", ") + k.key;
    }
    throw UsageError("unknown setting '" + key + "' (known: " + known + ")");
  }
  values_[key] = value;
}

void Settings::apply(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw UsageError("expected key=value, got '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Settings::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) {
      continue;
    }
    try {
      apply(body);
    } catch (const UsageError& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

const std::string& Settings::get(const std::string& key) const { return values_.at(key); }

double Settings::number(const std::string& key) const { return parse_number(get(key), key); }

bool Settings::flag(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "true" || v == "1" || v == "yes") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v.empty()) {
    return false;
  }
  throw UsageError("expected true or false for " + key + ", got '" + v + "'");
}

std::vector<double> Settings::numbers(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_number(item, key));
  }
  if (out.empty()) {
    throw UsageError("setting " + key + " is empty");
  }
  return out;
}

std::string Settings::dump() const {
  std::ostringstream out;
  for (const KeyInfo& k : keys_) {
    out << "# " << k.help << '\n' << k.key << " = " << values_.at(k.key) << '\n';
  }
  return out.str();
}

}  // namespace yeelab::cli
