#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zoma/baseline.hpp"
#include "zoma/channel.hpp"
#include "zoma/optimizer.hpp"

namespace zoma {

/// File-system failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monte Carlo experiment setup. Powers in dBm/dB, lengths in wavelengths.
struct ExperimentConfig {
  std::uint64_t master_seed = 7;
  int num_paths = 30;
  double region_side = 4.0;
  double transmit_power_dbm = 30.0;
  double transmit_snr_db = 30.0;
  HyperParams hyper;
  BaselineConfig baseline;
  std::vector<int> budgets{29, 69, 149, 209};
  std::vector<double> noise_variances_dbm{-10.0, -5.0, 0.0, 5.0, 10.0};
  int noise_budget = 209;
  int trials = 100;
  double grid_resolution = 0.05;
  /// Reuse one channel realization for every trial instead of resampling.
  bool fixed_channel = false;
  /// Worker threads for trials; 0 picks the hardware concurrency.
  int threads = 0;

  double transmit_power() const { return db_to_linear(transmit_power_dbm); }
  /// sigma^2 implied by the transmit SNR, in mW.
  double noise_variance() const {
    return db_to_linear(transmit_power_dbm - transmit_snr_db);
  }
  Region region() const { return Region(region_side); }

  /// Throws std::invalid_argument for values the sweeps cannot run with.
  /// Sweep lists are checked by the sweep that uses them.
  void validate() const;
};

/// Channel used by trial `trial` (or trial 0 in fixed-channel mode).
ChannelRealization trial_channel(const ExperimentConfig& config, int trial);

struct MapPoint {
  double x = 0.0;
  double y = 0.0;
  double snr_db = 0.0;
};

/// Noiseless receive SNR over a SquareGrid, row-major.
std::vector<MapPoint> snr_map(const ChannelRealization& channel,
                              const Region& region, double resolution,
                              double transmit_power, double noise_variance);

struct GridOptimum {
  Position position;
  double snr_db = 0.0;
};

/// Best noiseless SNR on the same grid as snr_map (first occurrence wins).
GridOptimum brute_force_max(const ChannelRealization& channel,
                            const Region& region, double resolution,
                            double transmit_power, double noise_variance);

inline constexpr const char* kProposed = "proposed";
inline constexpr const char* kBaseline = "baseline";

struct SweepRecord {
  std::string method;
  double sweep_param = 0.0;  // budget or noise variance (dBm)
  int trial = 0;
  double achieved_snr_db = 0.0;
  double gap_db = 0.0;
  std::uint64_t measurements = 0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepTable {
  std::vector<SweepRecord> records;
  /// Skipped configurations, e.g. a budget too small for initialization.
  std::vector<std::string> diagnostics;
};

/// Achieved true SNR of both methods versus total measurement budget.
/// Rows are ordered by budget, then method, then trial.
SweepTable run_budget_sweep(const ExperimentConfig& config);

/// Achieved true SNR of both methods versus noise variance at a fixed budget.
SweepTable run_noise_sweep(const ExperimentConfig& config);

/// Header: method,sweep_param,trial,achieved_snr_db,gap_db,measurements.
/// Doubles use the shortest representation that round-trips exactly.
void write_csv(const SweepTable& table, const std::filesystem::path& path);
SweepTable read_csv(const std::filesystem::path& path);

/// Header: x,y,snr_db.
void write_map_csv(const std::vector<MapPoint>& map,
                   const std::filesystem::path& path);

struct SummaryRow {
  std::string method;
  double sweep_param = 0.0;
  double mean_snr_db = 0.0;
  double std_snr_db = 0.0;  // sample standard deviation, 0 for one trial
  double mean_gap_db = 0.0;
  std::size_t trials = 0;
};

/// Per (method, sweep point) statistics in order of first appearance.
std::vector<SummaryRow> summarize(const SweepTable& table);

/// Header: sweep,method,sweep_param,mean_snr_db,std_snr_db,mean_gap_db,trials.
/// `sections` pairs a sweep name with its summary rows.
void write_summary_csv(
    const std::vector<std::pair<std::string, std::vector<SummaryRow>>>& sections,
    const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace zoma
