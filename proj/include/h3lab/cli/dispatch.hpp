#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace h3lab::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kRuntime = 2, kSafety = 3 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutEnv = "H3LAB_OUT";

/// Runs one subcommand: attack, campaign, label, features, detect
/// {train|eval|anomaly}, footprint, stats. `args` excludes the program
/// name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, const char* const* argv);

}  // namespace h3lab::cli
