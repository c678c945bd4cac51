#pragma once

#include <cstdint>
#include <vector>

#include "zoma/channel.hpp"
#include "zoma/rng.hpp"

namespace zoma {

/// Angular atoms on a cell-centered uniform grid over [-pi/2, pi/2]^2.
/// Atom index = elevation_index * azimuth_count + azimuth_index.
class AngularDictionary {
 public:
  AngularDictionary(int elevation_count, int azimuth_count,
                    double wavelength = 1.0);

  std::size_t size() const { return elevations_.size(); }
  int elevation_count() const { return elevation_count_; }
  int azimuth_count() const { return azimuth_count_; }
  double elevation(std::size_t atom) const { return elevations_[atom]; }
  double azimuth(std::size_t atom) const { return azimuths_[atom]; }
  double wavelength() const { return wavelength_; }

  /// Angle of grid cell `i` out of `count` (cell centers).
  static double grid_angle(int i, int count);
  std::size_t atom_index(int elevation_index, int azimuth_index) const;

  /// exp(-j 2pi/lambda rho_atom(position)); the same phase convention as a
  /// channel path with unit gain.
  Complex evaluate(std::size_t atom, const Position& position) const;

 private:
  int elevation_count_;
  int azimuth_count_;
  double wavelength_;
  std::vector<double> elevations_;
  std::vector<double> azimuths_;
};

struct Sample {
  Position position;
  Complex value;
};

/// Atoms selected by sparse recovery with gains normalized by sqrt(P).
struct EstimatedChannel {
  struct Term {
    std::size_t atom = 0;
    Complex gain;
  };
  std::vector<Term> terms;
  /// Residual norm after each accepted atom; first entry is the initial norm.
  std::vector<double> residual_norms;
};

/// M positions uniform over the region, one measurement each.
std::vector<Sample> collect_training(MeasurementOracle& oracle, int count,
                                     const Region& region, Rng& rng);

/// Orthogonal matching pursuit over the dictionary, at most `sparsity` atoms.
/// Stops early when the residual falls below `relative_tolerance` times the
/// initial norm. Atoms that would make the least-squares system rank
/// deficient are discarded instead of failing.
EstimatedChannel omp_recover(const std::vector<Sample>& samples,
                             const AngularDictionary& dictionary, int sparsity,
                             double transmit_power,
                             double relative_tolerance = 1e-6);

Complex reconstruct_response(const EstimatedChannel& estimate,
                             const AngularDictionary& dictionary,
                             const Position& position);

/// Argmax of |reconstruct_response|^2 over a SquareGrid (row-major first
/// occurrence wins ties).
Position grid_search_optimum(const EstimatedChannel& estimate,
                             const AngularDictionary& dictionary,
                             const Region& region, double resolution);

struct BaselineConfig {
  int elevation_count = 32;
  int azimuth_count = 32;
  /// 0 selects the default min(2 L, M / 2) capped at 64.
  int sparsity = 0;
  int num_paths_hint = 30;
  double grid_resolution = 0.05;
  double relative_tolerance = 1e-6;

  int effective_sparsity(int num_samples) const;
};

struct BaselineResult {
  Position position;
  std::uint64_t measurements = 0;
  EstimatedChannel estimate;
};

/// Spends the whole budget on training, runs OMP, then grid-searches the
/// reconstructed response.
BaselineResult csi_baseline(MeasurementOracle& oracle, const Region& region,
                            int budget, const BaselineConfig& config,
                            Rng& training_rng);

}  // namespace zoma
