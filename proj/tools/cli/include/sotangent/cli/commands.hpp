#pragma once

#include "json.hpp"

#include "sotangent/cli/problem.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInadmissible = 3;
inline constexpr int kExitInconclusive = 4;

struct RunOptions {
  std::optional<std::size_t> truncation;
  bool pretty = false;
  std::optional<std::string> decay_csv;
  bool assert_parabolic_regularity = false;
  std::uint64_t seed = 0;
};

struct CommandResult {
  nlohmann::json result;
  int exit_code = kExitOk;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand on a parsed problem. Throws sot::Error subclasses on bad input.
CommandResult run_command(const std::string& command, const ProblemFile& problem, const RunOptions& options);

/// Full pipeline on raw problem text: parse, run, wrap in the run report and print it.
/// Errors are reported as JSON on `out` and as a line on `err`; returns the exit code.
int run(const std::string& command, const std::string& input_text, const RunOptions& options, std::ostream& out,
        std::ostream& err);

std::string sha256_hex(const std::string& bytes);

} // namespace sot::cli
