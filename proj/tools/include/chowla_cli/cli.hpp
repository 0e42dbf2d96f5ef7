#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chowla/bigint.hpp"
#include "chowla_cli/serialize.hpp"

namespace chowla::cli {

inline constexpr const char* kOutputDirEnv = "CHOWLA_OUTPUT_DIR";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,
  kBudgetError = 3,
};

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  std::string subcommand;
  std::string poly_spec;
  std::int64_t n = 0;
  std::int64_t q = 1;
  std::int64_t a = 0;
  std::vector<std::int64_t> grid;
  std::int64_t x = 0;
  int k = 0;
  Rational ratio = 8;
  std::uint64_t seed = 0;
  std::int64_t replicates = 0;
  int threads = 1;
  std::int64_t memory_budget = 80'000'000;
  std::int64_t max_n = 10'000'000;
  std::optional<Rational> lpf_scale;
  std::string lpf_mode;  // empty, "same-prime" or "paired"
  bool chunked = false;
  bool conditional = false;
  bool dump_samples = false;
  bool skip_exact = false;
  bool no_table = false;
  bool dry_run = false;
  std::string out;  // empty: stdout, or <dir>/<subcommand>.<ext> with the env var
  OutputFormat format = OutputFormat::kJson;

  Json echo() const;
};

// Flag value parsers; each throws ConfigError naming `field`.
// Integers accept plain digits or exact scientific form ("1e5").
std::int64_t parse_count(const std::string& field, const std::string& text,
                         std::int64_t min, std::int64_t max);
// Decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& text);
// Comma-separated, strictly ascending, positive.
std::vector<std::int64_t> parse_grid(const std::string& field, const std::string& text);

// Resolves where the artifact goes; empty path means stdout.
std::string resolve_output_path(const RunConfig& config, const char* env_dir);

// Validates a config completely (polynomial admissibility, budgets) without
// computing anything heavy. Throws ConfigError or BudgetError.
Json validate(const RunConfig& config);

// Runs the subcommand: returns {"result": ..., "rows": ...} where rows is the
// CSV projection.
Json dispatch(const RunConfig& config);

// Full entry point: parses argv, runs, writes artifacts, reports errors as
// JSON on `err`, and returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chowla::cli
