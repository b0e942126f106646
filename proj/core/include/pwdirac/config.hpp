#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwdirac {

/// Raised for malformed or out-of-range configuration; the CLI maps it to
/// exit code 2 with a machine-readable error JSON.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key-value configuration: one "key = value" pair per line, '#'
/// comments, later keys override earlier ones. Values keep their text form
/// until typed access.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text);
  static Config from_file(const std::string& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  std::string echo() const;  // canonical sorted key = value text

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace pwdirac
