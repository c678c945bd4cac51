#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "zoma/rng.hpp"

namespace zoma {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Antenna coordinate in wavelength units. {0, 0} is the reference position.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Centered square feasible set [-side/2, side/2]^2.
class Region {
 public:
  explicit Region(double side);

  double side() const { return side_; }
  double half() const { return 0.5 * side_; }
  bool contains(const Position& p) const;

 private:
  double side_;
};

/// One multipath component: complex gain and arrival angles (radians).
struct PathComponent {
  Complex gain;
  double elevation = 0.0;
  double azimuth = 0.0;

  double magnitude() const { return std::abs(gain); }
  double phase() const { return std::arg(gain); }
};

/// Far-field multipath channel. Gains and angles are constant over the region;
/// only the per-path phase varies with antenna position.
class ChannelRealization {
 public:
  ChannelRealization(std::vector<PathComponent> paths, double wavelength = 1.0);

  const std::vector<PathComponent>& paths() const { return paths_; }
  std::size_t num_paths() const { return paths_.size(); }
  double wavelength() const { return wavelength_; }

 private:
  std::vector<PathComponent> paths_;
  double wavelength_;
};

/// Draws L paths with CN(0, 1/L) gains and elevation/azimuth uniform on
/// [-pi/2, pi/2]. Deterministic in `seed`.
ChannelRealization sample_channel(std::uint64_t seed, int num_paths,
                                  double wavelength = 1.0);

/// Propagation distance change of a path relative to the reference position:
/// x cos(elevation) sin(azimuth) + y sin(elevation).
double path_length_delta(const Position& position, double elevation,
                         double azimuth);

/// Per-path unit-modulus phase terms exp(j 2pi/lambda * rho_l).
std::vector<Complex> field_response(const ChannelRealization& channel,
                                    const Position& position);

/// h(r) = sum_l b_l exp(-j 2pi/lambda * rho_l(r)), summed in path order.
Complex channel_response(const ChannelRealization& channel,
                         const Position& position);

/// |h(r)|^2 via the pairwise cosine expansion
///   sum_m sum_n |b_m||b_n| cos(2pi/lambda (rho_m - rho_n) + (delta_n - delta_m)).
/// Independent route to |channel_response|^2; O(L^2).
double channel_power_expansion(const ChannelRealization& channel,
                               const Position& position);

/// 10 log10(|h|^2 P / sigma^2). Throws std::invalid_argument unless
/// P > 0 and sigma^2 > 0.
double receive_snr_db(const ChannelRealization& channel,
                      const Position& position, double transmit_power,
                      double noise_variance);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Noisy sampler y(r) = sqrt(P) h(r) s + n with n ~ CN(0, sigma^2).
/// Owns its noise stream and counts every measurement taken.
class MeasurementOracle {
 public:
  MeasurementOracle(ChannelRealization channel, double transmit_power,
                    double noise_variance, std::uint64_t noise_seed,
                    Complex pilot = {1.0, 0.0});

  Complex measure(const Position& position);

  std::uint64_t measurement_count() const { return count_; }
  const ChannelRealization& channel() const { return channel_; }
  double transmit_power() const { return transmit_power_; }
  double noise_variance() const { return noise_variance_; }
  Complex pilot() const { return pilot_; }

 private:
  ChannelRealization channel_;
  double transmit_power_;
  double noise_variance_;
  Complex pilot_;
  Rng rng_;
  std::uint64_t count_ = 0;
};

}  // namespace zoma
