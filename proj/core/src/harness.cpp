#include "zoma/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "zoma/grid.hpp"

namespace zoma {

namespace {

constexpr std::uint64_t kProposedStream = 0;
constexpr std::uint64_t kBaselineStream = 1;

struct MethodOutcome {
  bool ran = false;
  Position position;
  std::uint64_t measurements = 0;
};

MethodOutcome run_proposed(const ExperimentConfig& config,
                           const ChannelRealization& channel, int trial,
                           int budget, double noise_variance) {
  MethodOutcome out;
  const int n = config.hyper.num_init_candidates;
  if (budget <= n) return out;
  HyperParams hyper = config.hyper;
  hyper.max_iterations = (budget - n) / 2;
  MeasurementOracle oracle(
      channel, config.transmit_power(), noise_variance,
      derive_seed(config.master_seed, Stream::kNoise,
                  static_cast<std::uint64_t>(trial), kProposedStream));
  Rng init_rng(derive_seed(config.master_seed, Stream::kInitCandidates,
                           static_cast<std::uint64_t>(trial)));
  Rng direction_rng(derive_seed(config.master_seed, Stream::kDirection,
                                static_cast<std::uint64_t>(trial)));
  const auto result =
      optimize(oracle, config.region(), hyper, init_rng, direction_rng);
  out.ran = true;
  out.position = result.position;
  out.measurements = oracle.measurement_count();
  return out;
}

MethodOutcome run_baseline(const ExperimentConfig& config,
                           const ChannelRealization& channel, int trial,
                           int budget, double noise_variance) {
  MeasurementOracle oracle(
      channel, config.transmit_power(), noise_variance,
      derive_seed(config.master_seed, Stream::kNoise,
                  static_cast<std::uint64_t>(trial), kBaselineStream));
  Rng training_rng(derive_seed(config.master_seed, Stream::kTraining,
                               static_cast<std::uint64_t>(trial)));
  BaselineConfig baseline = config.baseline;
  baseline.num_paths_hint = config.num_paths;
  baseline.grid_resolution = config.grid_resolution;
  const auto result =
      csi_baseline(oracle, config.region(), budget, baseline, training_rng);
  MethodOutcome out;
  out.ran = true;
  out.position = result.position;
  out.measurements = oracle.measurement_count();
  return out;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Per-trial rows indexed [point][method].
using TrialRows = std::vector<std::array<std::optional<SweepRecord>, 2>>;

SweepTable assemble(const std::vector<TrialRows>& per_trial,
                    std::size_t points) {
  SweepTable table;
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t m = 0; m < 2; ++m) {
      for (const auto& rows : per_trial) {
        if (rows[p][m]) table.records.push_back(*rows[p][m]);
      }
    }
  }
  return table;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (num_paths < 1) throw std::invalid_argument("num_paths must be >= 1");
  if (!(region_side > 0.0)) throw std::invalid_argument("region side must be > 0");
  if (!std::isfinite(transmit_power_dbm) || !std::isfinite(transmit_snr_db)) {
    throw std::invalid_argument("power settings must be finite");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(grid_resolution > 0.0)) {
    throw std::invalid_argument("grid resolution must be > 0");
  }
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  hyper.validate();
  if (baseline.elevation_count < 1 || baseline.azimuth_count < 1) {
    throw std::invalid_argument("dictionary sizes must be >= 1");
  }
  if (baseline.sparsity < 0) throw std::invalid_argument("sparsity must be >= 0");
  for (int b : budgets) {
    if (b < 1) throw std::invalid_argument("budgets must be >= 1");
  }
  for (double s : noise_variances_dbm) {
    if (!std::isfinite(s)) throw std::invalid_argument("noise levels must be finite");
  }
  if (noise_budget < 1) throw std::invalid_argument("noise_budget must be >= 1");
}

ChannelRealization trial_channel(const ExperimentConfig& config, int trial) {
  const auto index = config.fixed_channel ? 0 : static_cast<std::uint64_t>(trial);
  return sample_channel(derive_seed(config.master_seed, Stream::kChannel, index),
                        config.num_paths);
}

std::vector<MapPoint> snr_map(const ChannelRealization& channel,
                              const Region& region, double resolution,
                              double transmit_power, double noise_variance) {
  const SquareGrid grid(region, resolution);
  std::vector<MapPoint> map;
  map.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Position p = grid.at(i);
    map.push_back(
        {p.x, p.y, receive_snr_db(channel, p, transmit_power, noise_variance)});
  }
  return map;
}

GridOptimum brute_force_max(const ChannelRealization& channel,
                            const Region& region, double resolution,
                            double transmit_power, double noise_variance) {
  const auto map =
      snr_map(channel, region, resolution, transmit_power, noise_variance);
  std::size_t best = 0;
  for (std::size_t i = 1; i < map.size(); ++i) {
    // dB difference equivalent of a kTieTolerance relative power margin.
    if (map[i].snr_db > map[best].snr_db + linear_to_db(1.0 + kTieTolerance)) {
      best = i;
    }
  }
  return {{map[best].x, map[best].y}, map[best].snr_db};
}

SweepTable run_budget_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.budgets.empty()) {
    throw std::invalid_argument("budget sweep needs at least one budget");
  }
  const double power = config.transmit_power();
  const double noise = config.noise_variance();
  const Region region = config.region();
  const std::size_t points = config.budgets.size();

  std::vector<TrialRows> per_trial(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, worker_count(config.threads), [&](int trial) {
    const ChannelRealization channel = trial_channel(config, trial);
    const GridOptimum best =
        brute_force_max(channel, region, config.grid_resolution, power, noise);
    TrialRows rows(points);
    for (std::size_t p = 0; p < points; ++p) {
      const int budget = config.budgets[p];
      const MethodOutcome outcomes[2] = {
          run_proposed(config, channel, trial, budget, noise),
          run_baseline(config, channel, trial, budget, noise)};
      for (std::size_t m = 0; m < 2; ++m) {
        if (!outcomes[m].ran) continue;
        const double snr =
            receive_snr_db(channel, outcomes[m].position, power, noise);
        rows[p][m] = SweepRecord{m == 0 ? kProposed : kBaseline,
                                 static_cast<double>(budget),
                                 trial,
                                 snr,
                                 best.snr_db - snr,
                                 outcomes[m].measurements};
      }
    }
    per_trial[static_cast<std::size_t>(trial)] = std::move(rows);
  });

  SweepTable table = assemble(per_trial, points);
  for (int budget : config.budgets) {
    if (budget <= config.hyper.num_init_candidates) {
      table.diagnostics.push_back(
          "budget " + std::to_string(budget) +
          " does not exceed the initialization candidates (" +
          std::to_string(config.hyper.num_init_candidates) +
          "); proposed method skipped");
    }
  }
  return table;
}

SweepTable run_noise_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.noise_variances_dbm.empty()) {
    throw std::invalid_argument("noise sweep needs at least one noise level");
  }
  const double power = config.transmit_power();
  const Region region = config.region();
  const std::size_t points = config.noise_variances_dbm.size();
  const int budget = config.noise_budget;

  std::vector<TrialRows> per_trial(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, worker_count(config.threads), [&](int trial) {
    const ChannelRealization channel = trial_channel(config, trial);
    // The grid argmax does not depend on sigma^2.
    const Position best = brute_force_max(channel, region,
                                          config.grid_resolution, power,
                                          config.noise_variance())
                              .position;
    TrialRows rows(points);
    for (std::size_t p = 0; p < points; ++p) {
      const double noise_dbm = config.noise_variances_dbm[p];
      const double noise = db_to_linear(noise_dbm);
      const double best_snr = receive_snr_db(channel, best, power, noise);
      const MethodOutcome outcomes[2] = {
          run_proposed(config, channel, trial, budget, noise),
          run_baseline(config, channel, trial, budget, noise)};
      for (std::size_t m = 0; m < 2; ++m) {
        if (!outcomes[m].ran) continue;
        const double snr =
            receive_snr_db(channel, outcomes[m].position, power, noise);
        rows[p][m] = SweepRecord{m == 0 ? kProposed : kBaseline,
                                 noise_dbm,
                                 trial,
                                 snr,
                                 best_snr - snr,
                                 outcomes[m].measurements};
      }
    }
    per_trial[static_cast<std::size_t>(trial)] = std::move(rows);
  });

  SweepTable table = assemble(per_trial, points);
  if (budget <= config.hyper.num_init_candidates) {
    table.diagnostics.push_back("noise budget " + std::to_string(budget) +
                                " does not exceed the initialization "
                                "candidates; proposed method skipped");
  }
  return table;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

double parse_double(const std::string& field, const std::filesystem::path& path) {
  double value = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw IoError("malformed number '" + field + "' in " + path.string());
  }
  return value;
}

}  // namespace

void write_csv(const SweepTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "method,sweep_param,trial,achieved_snr_db,gap_db,measurements\n";
  for (const auto& r : table.records) {
    out << r.method << ',' << format_double(r.sweep_param) << ',' << r.trial
        << ',' << format_double(r.achieved_snr_db) << ','
        << format_double(r.gap_db) << ',' << r.measurements << '\n';
  }
  finish(out, path);
}

SweepTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  SweepTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file " + path.string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw IoError("expected 6 fields in " + path.string() + ": " + line);
    }
    SweepRecord r;
    r.method = fields[0];
    r.sweep_param = parse_double(fields[1], path);
    r.trial = static_cast<int>(parse_double(fields[2], path));
    r.achieved_snr_db = parse_double(fields[3], path);
    r.gap_db = parse_double(fields[4], path);
    r.measurements = static_cast<std::uint64_t>(parse_double(fields[5], path));
    table.records.push_back(std::move(r));
  }
  return table;
}

void write_map_csv(const std::vector<MapPoint>& map,
                   const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "x,y,snr_db\n";
  for (const auto& p : map) {
    out << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(p.snr_db) << '\n';
  }
  finish(out, path);
}

std::vector<SummaryRow> summarize(const SweepTable& table) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<const SweepRecord*>> members;
  for (const auto& r : table.records) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
      return s.method == r.method && s.sweep_param == r.sweep_param;
    });
    if (it == rows.end()) {
      rows.push_back({r.method, r.sweep_param, 0.0, 0.0, 0.0, 0});
      members.emplace_back();
      it = rows.end() - 1;
    }
    members[static_cast<std::size_t>(it - rows.begin())].push_back(&r);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& group = members[i];
    const auto n = static_cast<double>(group.size());
    double sum = 0.0;
    double gap_sum = 0.0;
    for (const auto* r : group) {
      sum += r->achieved_snr_db;
      gap_sum += r->gap_db;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto* r : group) {
      ss += (r->achieved_snr_db - mean) * (r->achieved_snr_db - mean);
    }
    rows[i].mean_snr_db = mean;
    rows[i].mean_gap_db = gap_sum / n;
    rows[i].std_snr_db = group.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    rows[i].trials = group.size();
  }
  return rows;
}

void write_summary_csv(
    const std::vector<std::pair<std::string, std::vector<SummaryRow>>>& sections,
    const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "sweep,method,sweep_param,mean_snr_db,std_snr_db,mean_gap_db,trials\n";
  for (const auto& [sweep, rows] : sections) {
    for (const auto& r : rows) {
      out << sweep << ',' << r.method << ',' << format_double(r.sweep_param)
          << ',' << format_double(r.mean_snr_db) << ','
          << format_double(r.std_snr_db) << ',' << format_double(r.mean_gap_db)
          << ',' << r.trials << '\n';
    }
  }
  finish(out, path);
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers = std::clamp(threads, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace zoma
