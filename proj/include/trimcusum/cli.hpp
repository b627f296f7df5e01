#pragma once

// Command-line front end. Kept in a library so the tests can drive it
// without spawning processes.
//
// Exit status: 0 success (no rejection for `test`), 1 rejection, 2 usage
// error, 3 data error.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimcusum/heavy_tail.hpp"
#include "trimcusum/resampling.hpp"
#include "trimcusum/trimmed_cusum.hpp"

namespace trimcusum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

inline constexpr const char* kWorkersEnv = "TRIMCUSUM_WORKERS";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { test, simulate, power, resample, diagnose, quantile };
enum class Format { json, csv };

std::string to_string(Subcommand sub);

struct RunConfig {
  Subcommand subcommand = Subcommand::test;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::size_t> d;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::optional<std::size_t> replications;
  double alpha = 1.5;
  double p = 0.5;
  std::optional<Family> family;
  std::optional<Format> format;
  std::optional<std::size_t> resample_B;
  std::optional<std::size_t> m;
  ResampleMode mode = ResampleMode::without_replacement;
  int workers = 0;
  std::vector<std::size_t> n_list;
  std::optional<std::size_t> change_at;
  std::optional<double> critical_value;
};

/// One real per line, optional leading "value" header, blank lines ignored.
/// Throws DataError citing the 1-based line of the first bad entry, or a
/// too-short error below four values.
Sample parse_series(std::istream& in);
Sample load_series(const std::filesystem::path& path);

/// Throws UsageError on malformed flags. Returns nullopt when help was printed.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Applies the TRIMCUSUM_WORKERS override when `env_value` is set.
void apply_environment(RunConfig& config, const char* env_value);

/// Executes a parsed configuration. Reports go to `out` (or --output), errors to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + environment + run, mapping exceptions to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trimcusum::cli
