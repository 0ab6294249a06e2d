#ifndef STAM_RUNNER_HPP
#define STAM_RUNNER_HPP

#include "stam/config.hpp"

namespace stam {

inline constexpr const char* kVersion = "0.1.0";

/// Environment variable overriding the output directory for every run.
inline constexpr const char* kOutDirEnv = "STAM_OUT_DIR";

/// Executes one configured run and writes its artifacts plus
/// run_manifest.json (emitted even on failure) into the output directory.
/// Returns the process exit code: 0 ok, 2 config error, 3 numerical check
/// failed, 4 I/O error.
int run(const RunConfig& config);

}  // namespace stam

#endif
