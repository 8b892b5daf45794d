#pragma once

// Batch front end. Every command prints (or writes with --json) one JSON
// document {"version", "config", "result", "pass", "failures"}.

#include <filesystem>
#include <ostream>
#include <string>

namespace heatcoef {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitIo = 3 };

const char* version();

/// Relative output paths resolve against $HEATCOEF_OUT_DIR when it is set.
std::filesystem::path output_path(const std::string& name);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heatcoef
