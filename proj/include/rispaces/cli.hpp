#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rispaces::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kInputError = 2 };

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string format = "json";  // json | csv
  bool timestamp = true;
  bool raw = false;
};

struct RunResult {
  int exit_code = kOk;
  nlohmann::json document;
  /// Rendered output in the requested format.
  std::string text;
};

/// Commands accepted in the "command" field of a run config.
const std::vector<std::string>& commands();

/// Checks the config against the command's schema: known command, required
/// fields present, no unknown fields. Throws InvalidArgument.
void check_schema(const nlohmann::json& config);

/// Validates and dispatches one run. Input errors yield exit code 2 with an
/// "error" document; nothing is computed for a config that fails the schema.
RunResult run(const nlohmann::json& config, const Options& options = {});

/// Rounds every floating-point number in `j` to 8 significant digits.
nlohmann::json display_rounded(const nlohmann::json& j);

/// Command-line entry point: rispaces [COMMAND] [--config PATH] [--out PATH]
/// [--format json|csv] [--seed N] [--tol X] [--no-timestamp] [--raw].
int main(int argc, char** argv);

}  // namespace rispaces::cli
