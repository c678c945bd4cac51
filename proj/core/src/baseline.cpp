#include "zoma/baseline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zoma/grid.hpp"

namespace zoma {

AngularDictionary::AngularDictionary(int elevation_count, int azimuth_count,
                                     double wavelength)
    : elevation_count_(elevation_count),
      azimuth_count_(azimuth_count),
      wavelength_(wavelength) {
  if (elevation_count < 1 || azimuth_count < 1) {
    throw std::invalid_argument("dictionary grid sizes must be >= 1");
  }
  if (!(wavelength > 0.0)) {
    throw std::invalid_argument("wavelength must be positive");
  }
  const auto n = static_cast<std::size_t>(elevation_count) *
                 static_cast<std::size_t>(azimuth_count);
  elevations_.reserve(n);
  azimuths_.reserve(n);
  for (int e = 0; e < elevation_count; ++e) {
    for (int a = 0; a < azimuth_count; ++a) {
      elevations_.push_back(grid_angle(e, elevation_count));
      azimuths_.push_back(grid_angle(a, azimuth_count));
    }
  }
}

double AngularDictionary::grid_angle(int i, int count) {
  return -0.5 * kPi + (i + 0.5) * kPi / count;
}

std::size_t AngularDictionary::atom_index(int elevation_index,
                                          int azimuth_index) const {
  return static_cast<std::size_t>(elevation_index) *
             static_cast<std::size_t>(azimuth_count_) +
         static_cast<std::size_t>(azimuth_index);
}

Complex AngularDictionary::evaluate(std::size_t atom,
                                    const Position& position) const {
  const double k = 2.0 * kPi / wavelength_;
  return std::polar(
      1.0, -k * path_length_delta(position, elevations_[atom], azimuths_[atom]));
}

std::vector<Sample> collect_training(MeasurementOracle& oracle, int count,
                                     const Region& region, Rng& rng) {
  if (count < 1) {
    throw std::invalid_argument("training needs at least one measurement");
  }
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = rng.uniform(-region.half(), region.half());
    const double y = rng.uniform(-region.half(), region.half());
    const Position p{x, y};
    samples.push_back({p, oracle.measure(p)});
  }
  return samples;
}

EstimatedChannel omp_recover(const std::vector<Sample>& samples,
                             const AngularDictionary& dictionary, int sparsity,
                             double transmit_power,
                             double relative_tolerance) {
  if (sparsity < 1) {
    throw std::invalid_argument("OMP sparsity must be >= 1");
  }
  if (!(transmit_power > 0.0)) {
    throw std::invalid_argument("transmit power must be positive");
  }
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto atoms = static_cast<Eigen::Index>(dictionary.size());

  Eigen::VectorXcd target(rows);
  const double scale = 1.0 / std::sqrt(transmit_power);
  for (Eigen::Index i = 0; i < rows; ++i) {
    target(i) = samples[static_cast<std::size_t>(i)].value * scale;
  }
  Eigen::MatrixXcd phi(rows, atoms);
  for (Eigen::Index g = 0; g < atoms; ++g) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      phi(i, g) = dictionary.evaluate(static_cast<std::size_t>(g),
                                      samples[static_cast<std::size_t>(i)].position);
    }
  }

  EstimatedChannel out;
  const double initial_norm = target.norm();
  out.residual_norms.push_back(initial_norm);
  if (rows == 0 || initial_norm == 0.0) return out;
  const double stop_norm = relative_tolerance * initial_norm;

  // Orthonormal basis of the selected columns (modified Gram-Schmidt) and
  // the matching upper-triangular factor, grown one atom at a time.
  std::vector<char> unavailable(static_cast<std::size_t>(atoms), 0);
  std::vector<Eigen::Index> support;
  Eigen::MatrixXcd basis(rows, 0);
  Eigen::MatrixXcd upper(0, 0);
  Eigen::VectorXcd residual = target;

  while (static_cast<int>(support.size()) < sparsity) {
    const Eigen::VectorXcd corr = phi.adjoint() * residual;
    Eigen::Index best = -1;
    double best_mag = 0.0;
    for (Eigen::Index g = 0; g < atoms; ++g) {
      if (unavailable[static_cast<std::size_t>(g)]) continue;
      const double mag = std::abs(corr(g));
      if (mag > best_mag) {
        best_mag = mag;
        best = g;
      }
    }
    if (best < 0) break;
    unavailable[static_cast<std::size_t>(best)] = 1;

    const Eigen::Index k = basis.cols();
    Eigen::VectorXcd column = phi.col(best);
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(k);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) {
        const Complex c = basis.col(j).dot(column);
        proj(j) += c;
        column -= c * basis.col(j);
      }
    }
    const double remainder = column.norm();
    // Numerically dependent on the current support: drop it.
    if (remainder <= 1e-10 * std::sqrt(static_cast<double>(rows))) continue;

    basis.conservativeResize(Eigen::NoChange, k + 1);
    basis.col(k) = column / remainder;
    upper.conservativeResize(k + 1, k + 1);
    upper.row(k).setZero();
    upper.col(k).head(k) = proj;
    upper(k, k) = remainder;
    support.push_back(best);

    residual -= basis.col(k).dot(residual) * basis.col(k);
    const double norm = residual.norm();
    out.residual_norms.push_back(norm);
    if (norm < stop_norm) break;
  }

  if (!support.empty()) {
    const Eigen::VectorXcd rhs = basis.adjoint() * target;
    const Eigen::VectorXcd coeffs =
        upper.triangularView<Eigen::Upper>().solve(rhs);
    out.terms.reserve(support.size());
    for (std::size_t c = 0; c < support.size(); ++c) {
      out.terms.push_back({static_cast<std::size_t>(support[c]),
                           coeffs(static_cast<Eigen::Index>(c))});
    }
  }
  return out;
}

Complex reconstruct_response(const EstimatedChannel& estimate,
                             const AngularDictionary& dictionary,
                             const Position& position) {
  Complex h{0.0, 0.0};
  for (const auto& term : estimate.terms) {
    h += term.gain * dictionary.evaluate(term.atom, position);
  }
  return h;
}

Position grid_search_optimum(const EstimatedChannel& estimate,
                             const AngularDictionary& dictionary,
                             const Region& region, double resolution) {
  const SquareGrid grid(region, resolution);
  const auto& axis = grid.axis();
  const std::size_t n = axis.size();
  const double k = 2.0 * kPi / dictionary.wavelength();

  // exp(-jk(x a + y b)) factors into per-axis terms.
  std::vector<Complex> x_terms(estimate.terms.size() * n);
  std::vector<Complex> y_terms(estimate.terms.size() * n);
  for (std::size_t t = 0; t < estimate.terms.size(); ++t) {
    const std::size_t atom = estimate.terms[t].atom;
    const double a = std::cos(dictionary.elevation(atom)) *
                     std::sin(dictionary.azimuth(atom));
    const double b = std::sin(dictionary.elevation(atom));
    for (std::size_t i = 0; i < n; ++i) {
      x_terms[t * n + i] = estimate.terms[t].gain * std::polar(1.0, -k * a * axis[i]);
      y_terms[t * n + i] = std::polar(1.0, -k * b * axis[i]);
    }
  }

  std::size_t best = 0;
  double best_power = -1.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      Complex h{0.0, 0.0};
      for (std::size_t t = 0; t < estimate.terms.size(); ++t) {
        h += x_terms[t * n + ix] * y_terms[t * n + iy];
      }
      const double power = std::norm(h);
      if (power > best_power * (1.0 + kTieTolerance)) {
        best_power = power;
        best = iy * n + ix;
      }
    }
  }
  return grid.at(best);
}

int BaselineConfig::effective_sparsity(int num_samples) const {
  if (sparsity > 0) return sparsity;
  return std::max(1, std::min({2 * num_paths_hint, num_samples / 2, 64}));
}

BaselineResult csi_baseline(MeasurementOracle& oracle, const Region& region,
                            int budget, const BaselineConfig& config,
                            Rng& training_rng) {
  if (budget < 1) {
    throw std::invalid_argument("baseline budget must be >= 1");
  }
  const std::uint64_t start = oracle.measurement_count();
  const auto samples = collect_training(oracle, budget, region, training_rng);
  const AngularDictionary dictionary(config.elevation_count,
                                     config.azimuth_count,
                                     oracle.channel().wavelength());
  BaselineResult out;
  out.estimate = omp_recover(samples, dictionary,
                             config.effective_sparsity(budget),
                             oracle.transmit_power(), config.relative_tolerance);
  out.position = grid_search_optimum(out.estimate, dictionary, region,
                                     config.grid_resolution);
  out.measurements = oracle.measurement_count() - start;
  return out;
}

}  // namespace zoma
