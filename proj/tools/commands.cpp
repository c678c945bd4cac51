#include "commands.hpp"

#include <fstream>
#include <ostream>

#include "config.hpp"

namespace zoma::cli {

namespace {

// Runs `body` and maps failures to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

void ensure_parent(const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

std::ofstream open_csv(const std::filesystem::path& path) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

ExperimentConfig resolve_config(const std::filesystem::path& config_path,
                                const Overrides& overrides) {
  ExperimentConfig config = load_config(config_path);
  if (overrides.seed) config.master_seed = *overrides.seed;
  if (overrides.trials) config.trials = *overrides.trials;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError({e.what()});
  }
  return config;
}

int cmd_map(const std::filesystem::path& config_path,
            const std::filesystem::path& out_path, const Overrides& overrides,
            std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = resolve_config(config_path, overrides);
    const auto channel = trial_channel(config, 0);
    const auto map = snr_map(channel, config.region(), config.grid_resolution,
                             config.transmit_power(), config.noise_variance());
    ensure_parent(out_path);
    write_map_csv(map, out_path);
    log << "wrote " << map.size() << " grid points to " << out_path.string()
        << '\n';
  });
}

int cmd_optimize(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_path,
                 const Overrides& overrides, std::ostream& log,
                 std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = resolve_config(config_path, overrides);
    const auto channel = trial_channel(config, 0);
    const double power = config.transmit_power();
    const double noise = config.noise_variance();
    const Region region = config.region();

    MeasurementOracle oracle(
        channel, power, noise,
        derive_seed(config.master_seed, Stream::kNoise, 0, 0));
    Rng init_rng(derive_seed(config.master_seed, Stream::kInitCandidates, 0));
    Rng direction_rng(derive_seed(config.master_seed, Stream::kDirection, 0));
    const auto result =
        optimize(oracle, region, config.hyper, init_rng, direction_rng);
    const auto& traj = result.trajectory;

    auto out = open_csv(out_path);
    out << "iteration,x,y,measured_power,snr_db\n";
    out << 0 << ',' << format_double(traj.initial.x) << ','
        << format_double(traj.initial.y) << ','
        << format_double(traj.initial_power) << ','
        << format_double(receive_snr_db(channel, traj.initial, power, noise))
        << '\n';
    for (const auto& rec : traj.iterations) {
      out << rec.iteration << ',' << format_double(rec.next.x) << ','
          << format_double(rec.next.y) << ','
          << format_double(0.5 * (rec.power_plus + rec.power_minus)) << ','
          << format_double(receive_snr_db(channel, rec.next, power, noise))
          << '\n';
    }
    out.flush();
    if (!out) throw IoError("failed writing " + out_path.string());

    log << "final_x=" << format_double(result.position.x)
        << " final_y=" << format_double(result.position.y) << " final_snr_db="
        << format_double(receive_snr_db(channel, result.position, power, noise))
        << " reference_snr_db="
        << format_double(receive_snr_db(channel, {0.0, 0.0}, power, noise))
        << " measurements=" << traj.measurements << '\n';
  });
}

int cmd_compare(const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir,
                const Overrides& overrides, std::ostream& log,
                std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = resolve_config(config_path, overrides);
    if (config.budgets.empty() && config.noise_variances_dbm.empty()) {
      throw ConfigError({"sweep: budgets and noise_variances_dbm are both empty"});
    }

    std::vector<std::pair<std::string, std::vector<SummaryRow>>> sections;
    std::vector<std::pair<std::filesystem::path, SweepTable>> outputs;
    if (!config.budgets.empty()) {
      SweepTable table = run_budget_sweep(config);
      sections.emplace_back("budget", summarize(table));
      outputs.emplace_back(out_dir / "budget_sweep.csv", std::move(table));
    }
    if (!config.noise_variances_dbm.empty()) {
      SweepTable table = run_noise_sweep(config);
      sections.emplace_back("noise", summarize(table));
      outputs.emplace_back(out_dir / "noise_sweep.csv", std::move(table));
    }

    std::filesystem::create_directories(out_dir);
    for (const auto& [path, table] : outputs) {
      for (const auto& d : table.diagnostics) log << "note: " << d << '\n';
      write_csv(table, path);
      log << "wrote " << table.records.size() << " rows to " << path.string()
          << '\n';
    }
    write_summary_csv(sections, out_dir / "summary.csv");
    log << "wrote " << (out_dir / "summary.csv").string() << '\n';
  });
}

int cmd_channel(const std::filesystem::path& config_path,
                const std::filesystem::path& out_path,
                const Overrides& overrides, std::ostream& log,
                std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = resolve_config(config_path, overrides);
    const auto channel = trial_channel(config, 0);
    auto out = open_csv(out_path);
    out << "path,gain_re,gain_im,elevation,azimuth\n";
    for (std::size_t l = 0; l < channel.num_paths(); ++l) {
      const auto& p = channel.paths()[l];
      out << l << ',' << format_double(p.gain.real()) << ','
          << format_double(p.gain.imag()) << ',' << format_double(p.elevation)
          << ',' << format_double(p.azimuth) << '\n';
    }
    out.flush();
    if (!out) throw IoError("failed writing " + out_path.string());
    log << "wrote " << channel.num_paths() << " paths to " << out_path.string()
        << '\n';
  });
}

}  // namespace zoma::cli
