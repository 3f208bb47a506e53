#pragma once

#include <cstdint>
#include <string>

namespace slopelab {

// Exit codes shared by the CLI and the experiment runners.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

// Runs one experiment kind against a JSON config and writes the CSV
// report to `out_path`. Returns an exit code; configuration and IO
// problems are reported on stderr.
int run_experiment(const std::string& kind, const std::string& config_path,
                   const std::string& out_path, std::uint64_t seed, int jobs);

}  // namespace slopelab
