#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldforge/word_problem.hpp"

namespace ldforge::cli {

enum class OutputFormat : std::uint8_t { Text, Csv, Json };

struct Config {
  std::filesystem::path cache_dir;
  unsigned max_table_k = 16;
  Budget default_budget;
  OutputFormat output_format = OutputFormat::Text;
};

/// Returns the value of an environment variable, or nullopt when unset.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_env();

/// Built-in defaults overridden by LDFORGE_CACHE_DIR, LDFORGE_MAX_TABLE_K,
/// LDFORGE_MAX_DEPTH, LDFORGE_MAX_TERM_SIZE, LDFORGE_MAX_VISITED,
/// LDFORGE_MAX_TABLE_LEVEL and LDFORGE_FORMAT. Command flags override these.
Config resolve_config(const EnvLookup& env);

enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 1,
  kExitInconclusive = 2,
};

/// Runs one command line (without the program name). Output ordering is fixed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env());

}  // namespace ldforge::cli
