#include "stam/config.hpp"

#include <array>
#include <cerrno>
#include <cstdlib>
#include <sstream>

namespace stam {

namespace {

constexpr std::array kKnownKeys = {
    "model",
    "lambda.k2",
    "lambda.k3",
    "lambda.t_p",
    "lambda.phi",
    "bosonic.truncation",
    "bosonic.omega",
    "bosonic.alpha_re",
    "bosonic.alpha_im",
    "coupled.coupling_E",
    "coupled.interpolation",
    "schedule.N",
    "schedule.Theta_N",
    "seed",
    "out_dir",
    "error.amplitude_rel",
    "error.detuning_per_omega",
    "error.phase_rel",
    "error.pauli_site",
    "error.pauli_axis",
    "error.pauli_magnitude",
    "drift.tau_c",
    "drift.variance",
    "noise.gamma_e_per_omega",
    "noise.gamma_dep_per_omega",
    "scan.merit",
    "scan.axis1.channel",
    "scan.axis1.min",
    "scan.axis1.max",
    "scan.axis1.points",
    "scan.axis2.channel",
    "scan.axis2.min",
    "scan.axis2.max",
    "scan.axis2.points",
    "bound.num_lambda",
    "ramp.total_time_E",
    "ramp.local_error_x_per_E",
    "figure.tag",
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

bool is_known_key(const std::string& key) {
  for (const char* k : kKnownKeys) {
    if (key == k) return true;
  }
  return false;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!is_known_key(key)) {
      throw ConfigError("unknown key '" + key + "'");
    }
    if (kv.count(key)) {
      throw ConfigError("duplicate key '" + key + "'");
    }
    kv[key] = value;
  }
  return kv;
}

std::string serialize_config(const std::map<std::string, std::string>& kv) {
  std::string out;
  for (const auto& [key, value] : kv) {
    out += key + " = " + value + "\n";
  }
  return out;
}

std::string RunConfig::get_str(const std::string& key,
                               const std::string& fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::string RunConfig::require_str(const std::string& key) const {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw ConfigError("missing required key '" + key + "'");
  }
  return it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0') {
    throw ConfigError("key '" + key + "' is not a number: " + it->second);
  }
  return v;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("key '" + key + "' is not an integer: " + it->second);
  }
  return static_cast<int>(v);
}

std::uint64_t RunConfig::get_u64(const std::string& key,
                                 std::uint64_t fallback) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0' || errno == ERANGE ||
      it->second[0] == '-') {
    throw ConfigError("key '" + key + "' is not a u64: " + it->second);
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace stam
