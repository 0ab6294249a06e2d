#ifndef STAM_CONFIG_HPP
#define STAM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "stam/types.hpp"

namespace stam {

/// Flat `key = value` run configuration.  Parsing is strict: unknown keys,
/// duplicates and malformed lines are ConfigError.  serialize(parse(x)) is
/// a fixed point (keys sorted, canonical spacing).
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> kv;
  std::string out_dir = ".";
  double grid_scale = 1.0;

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::string get_str(const std::string& key, const std::string& fallback) const;
  std::string require_str(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
};

std::map<std::string, std::string> parse_config(const std::string& text);
std::string serialize_config(const std::map<std::string, std::string>& kv);

/// The full key whitelist; parse_config rejects anything outside it.
bool is_known_key(const std::string& key);

}  // namespace stam

#endif
