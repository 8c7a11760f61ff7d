#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Parses `key = value` lines ('#' starts a comment) into `--key value` pairs
/// for every key not already present in `args`.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& config_text);

}  // namespace qwz::cli
