#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace qsearch::cli {

enum class Command { kSimulate, kVerify, kEstimate, kCount, kSweep, kCompare };
enum class OutputFormat { kJson, kCsv, kBoth };

const char* to_string(Command command) noexcept;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

struct SweepSettings {
  std::size_t l = 1;
  std::size_t n1 = 2;
  std::size_t n2 = 1;
  std::size_t n12 = 0;
  double alpha_min = 0.5;
  double alpha_max = 0.999;
  std::size_t points = 100;
  std::size_t suite_count = 20;  // random scenarios per bound family in sweep.json
};

struct RunConfig {
  Command command = Command::kSimulate;
  std::filesystem::path scenario_path;  // required except for sweep
  std::size_t m_size = 64;
  std::size_t n_samples = 50;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = ".";
  OutputFormat format = OutputFormat::kBoth;
  std::optional<double> energy;  // overrides the scenario value
  std::size_t grid_points = 64;  // verify
  SweepSettings sweep;
};

/// Checks the config invariants; throws ValidationError.
void validate(const RunConfig& config);

/// Executes one subcommand and writes its artifacts into config.output_dir.
/// Returns kExitOk, kExitValidation or kExitInternal; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

/// Parses flags (and an optional --config file, flags win) and calls run().
int run_cli(int argc, const char* const* argv);

}  // namespace qsearch::cli
