#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coreproj/execution.hpp"

namespace coreproj::cli {

enum class Subcommand { check, project, failure, reallocate, least_core, chebyshev, market_game };
enum class OutputFormat { json, text };

struct CommandRequest {
  Subcommand subcommand = Subcommand::check;
  std::optional<std::filesystem::path> game_path;
  std::optional<std::filesystem::path> market_path;
  std::optional<std::vector<double>> x;
  OutputFormat output = OutputFormat::json;
  /// Overrides the face and efficiency tolerances together.
  std::optional<double> tol;
  Execution execution = Execution::parallel;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitDomain = 2;

/// Runs one request. The report goes to `out` in a single write after all
/// computation; diagnostics go to `err`. Returns 0 on success, 2 on domain
/// errors (empty core, not a preimputation) and 1 on I/O, parse or usage errors.
int execute(const CommandRequest& request, std::ostream& out, std::ostream& err);

std::optional<Subcommand> parse_subcommand(std::string_view name);
std::string_view subcommand_name(Subcommand s);

/// "1,0,0" -> {1, 0, 0}. Throws ParseError.
std::vector<double> parse_vector(std::string_view text);

}  // namespace coreproj::cli
