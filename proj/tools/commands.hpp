#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "zoma/harness.hpp"

namespace zoma::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;

/// Values given on the command line that take precedence over the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
};

/// Loads, overrides and validates. Throws ConfigError or IoError.
ExperimentConfig resolve_config(const std::filesystem::path& config_path,
                                const Overrides& overrides);

/// Each command validates its whole configuration before writing anything
/// and returns an exit code; diagnostics go to `err`.
int cmd_map(const std::filesystem::path& config_path,
            const std::filesystem::path& out_path, const Overrides& overrides,
            std::ostream& log, std::ostream& err);

/// Trajectory CSV: iteration,x,y,measured_power,snr_db. Row 0 is the
/// initialization; row t is the position after update t with the mean |y|^2
/// of its two probes. Prints a one-line summary to `log`.
int cmd_optimize(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_path,
                 const Overrides& overrides, std::ostream& log,
                 std::ostream& err);

/// Writes budget_sweep.csv and/or noise_sweep.csv (skipping a sweep whose
/// list is empty) plus summary.csv into `out_dir`.
int cmd_compare(const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir,
                const Overrides& overrides, std::ostream& log,
                std::ostream& err);

/// Path table of the trial-0 channel: path,gain_re,gain_im,elevation,azimuth.
int cmd_channel(const std::filesystem::path& config_path,
                const std::filesystem::path& out_path,
                const Overrides& overrides, std::ostream& log,
                std::ostream& err);

}  // namespace zoma::cli
