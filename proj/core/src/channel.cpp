#include "zoma/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zoma {

Region::Region(double side) : side_(side) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw std::invalid_argument("region side must be positive, got " +
                                std::to_string(side));
  }
}

bool Region::contains(const Position& p) const {
  return std::abs(p.x) <= half() && std::abs(p.y) <= half();
}

ChannelRealization::ChannelRealization(std::vector<PathComponent> paths,
                                       double wavelength)
    : paths_(std::move(paths)), wavelength_(wavelength) {
  if (paths_.empty()) {
    throw std::invalid_argument("channel needs at least one path");
  }
  if (!(wavelength_ > 0.0)) {
    throw std::invalid_argument("wavelength must be positive");
  }
}

ChannelRealization sample_channel(std::uint64_t seed, int num_paths,
                                  double wavelength) {
  if (num_paths < 1) {
    throw std::invalid_argument("number of paths must be >= 1, got " +
                                std::to_string(num_paths));
  }
  if (!(wavelength > 0.0)) {
    throw std::invalid_argument("wavelength must be positive");
  }
  Rng rng(seed);
  const double part_std = std::sqrt(1.0 / (2.0 * num_paths));
  std::vector<PathComponent> paths;
  paths.reserve(static_cast<std::size_t>(num_paths));
  for (int l = 0; l < num_paths; ++l) {
    PathComponent path;
    const double re = rng.normal(0.0, part_std);
    const double im = rng.normal(0.0, part_std);
    path.gain = {re, im};
    path.elevation = rng.uniform(-0.5 * kPi, 0.5 * kPi);
    path.azimuth = rng.uniform(-0.5 * kPi, 0.5 * kPi);
    paths.push_back(path);
  }
  return ChannelRealization(std::move(paths), wavelength);
}

double path_length_delta(const Position& position, double elevation,
                         double azimuth) {
  return position.x * std::cos(elevation) * std::sin(azimuth) +
         position.y * std::sin(elevation);
}

std::vector<Complex> field_response(const ChannelRealization& channel,
                                    const Position& position) {
  const double k = 2.0 * kPi / channel.wavelength();
  std::vector<Complex> f;
  f.reserve(channel.num_paths());
  for (const auto& path : channel.paths()) {
    f.push_back(std::polar(1.0, k * path_length_delta(position, path.elevation,
                                                      path.azimuth)));
  }
  return f;
}

Complex channel_response(const ChannelRealization& channel,
                         const Position& position) {
  const double k = 2.0 * kPi / channel.wavelength();
  Complex h{0.0, 0.0};
  for (const auto& path : channel.paths()) {
    const double rho = path_length_delta(position, path.elevation, path.azimuth);
    h += path.gain * std::polar(1.0, -k * rho);
  }
  return h;
}

double channel_power_expansion(const ChannelRealization& channel,
                               const Position& position) {
  const double k = 2.0 * kPi / channel.wavelength();
  const auto& paths = channel.paths();
  const std::size_t n_paths = paths.size();
  std::vector<double> rho(n_paths), mag(n_paths), phase(n_paths);
  for (std::size_t l = 0; l < n_paths; ++l) {
    rho[l] = path_length_delta(position, paths[l].elevation, paths[l].azimuth);
    mag[l] = paths[l].magnitude();
    phase[l] = paths[l].phase();
  }
  // Diagonal terms plus twice the upper triangle (the summand is symmetric).
  double diagonal = 0.0;
  double cross = 0.0;
  for (std::size_t m = 0; m < n_paths; ++m) {
    diagonal += mag[m] * mag[m];
    for (std::size_t n = m + 1; n < n_paths; ++n) {
      cross += mag[m] * mag[n] *
               std::cos(k * (rho[m] - rho[n]) + phase[n] - phase[m]);
    }
  }
  return diagonal + 2.0 * cross;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double receive_snr_db(const ChannelRealization& channel,
                      const Position& position, double transmit_power,
                      double noise_variance) {
  if (!(transmit_power > 0.0)) {
    throw std::invalid_argument("transmit power must be positive");
  }
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("noise variance must be positive for SNR");
  }
  return linear_to_db(std::norm(channel_response(channel, position)) *
                      transmit_power / noise_variance);
}

MeasurementOracle::MeasurementOracle(ChannelRealization channel,
                                     double transmit_power,
                                     double noise_variance,
                                     std::uint64_t noise_seed, Complex pilot)
    : channel_(std::move(channel)),
      transmit_power_(transmit_power),
      noise_variance_(noise_variance),
      pilot_(pilot),
      rng_(noise_seed) {
  if (!(transmit_power_ > 0.0)) {
    throw std::invalid_argument("transmit power must be positive");
  }
  if (!(noise_variance_ >= 0.0)) {
    throw std::invalid_argument("noise variance must be non-negative");
  }
}

Complex MeasurementOracle::measure(const Position& position) {
  ++count_;
  Complex y = std::sqrt(transmit_power_) * channel_response(channel_, position) *
              pilot_;
  if (noise_variance_ > 0.0) {
    const double part_std = std::sqrt(0.5 * noise_variance_);
    const double re = rng_.normal(0.0, part_std);
    const double im = rng_.normal(0.0, part_std);
    y += Complex{re, im};
  }
  return y;
}

}  // namespace zoma
