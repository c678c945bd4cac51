#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zoma/channel.hpp"
#include "zoma/rng.hpp"

namespace zoma {

using Vec2 = std::array<double, 2>;

/// ZO-AdaMM settings. Lengths are in wavelengths.
struct HyperParams {
  double step_size = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double mu = 0.05;
  double dim_factor = 2.0;
  /// Added to sqrt(v_hat) in the update denominator.
  double epsilon = 1e-8;
  int num_init_candidates = 9;
  int max_iterations = 30;
  /// Stop once the last `early_stop_window` update steps are all shorter
  /// than `early_stop_tolerance`. Off by default: the budget is fixed.
  bool early_stop = false;
  int early_stop_window = 5;
  double early_stop_tolerance = 1e-3;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct OptimizerState {
  Position position;
  Vec2 m{0.0, 0.0};
  Vec2 v{0.0, 0.0};
  int t = 0;
};

/// Componentwise clamp into [-A/2, A/2].
Position project(const Position& position, const Region& region);

/// Central-difference gradient estimate of |y|^2 along a coordinate axis:
///   (d / 2mu) (|y(r + mu u)|^2 - |y(r - mu u)|^2) u.
/// Probe points are clamped into the region before measuring; the quotient
/// keeps the nominal 2mu spacing. Takes exactly two measurements, "+" first.
/// `axis` is 0 for e1, 1 for e2.
struct ZoGradient {
  Vec2 gradient;
  double power_plus = 0.0;
  double power_minus = 0.0;
};
ZoGradient zo_gradient(MeasurementOracle& oracle, const Region& region,
                       const Position& position, double mu, int axis,
                       double dim_factor);

/// Bias-corrected moments m / (1 - beta1^t), v / (1 - beta2^t) of a state
/// with t >= 1.
struct CorrectedMoments {
  Vec2 m_hat{0.0, 0.0};
  Vec2 v_hat{0.0, 0.0};
};
CorrectedMoments bias_corrected(const OptimizerState& state,
                                const HyperParams& hyper);

/// alpha * m_hat / (sqrt(v_hat) + epsilon), elementwise.
Vec2 update_step(const CorrectedMoments& moments, const HyperParams& hyper);

/// One ZO-AdaMM update (ascent). Moments are bias-corrected with the
/// incremented counter, so the first step uses t = 1. A coordinate whose
/// corrected second moment and denominator are both zero does not move.
OptimizerState adamm_step(const OptimizerState& state, const Vec2& gradient,
                          const HyperParams& hyper, const Region& region);

/// Position with the largest |y| among `num_candidates` uniform draws over
/// the region (one measurement each; ties go to the lowest index).
struct InitResult {
  Position position;
  double power = 0.0;  // |y|^2 at the chosen candidate
  std::vector<Position> candidates;
};
InitResult init_position(MeasurementOracle& oracle, const Region& region,
                         int num_candidates, Rng& rng);

struct IterationRecord {
  int iteration = 0;  // 1-based
  Position position;  // r_t before the update
  double power_plus = 0.0;
  double power_minus = 0.0;
  int axis = 0;
  Vec2 gradient{0.0, 0.0};
  Position next;  // r_{t+1}
};

struct Trajectory {
  Position initial;
  double initial_power = 0.0;
  std::vector<IterationRecord> iterations;
  std::uint64_t measurements = 0;
};

struct OptimizeResult {
  Position position;
  Trajectory trajectory;
};

/// Candidate-sampling initialization followed by up to `max_iterations`
/// ZO-AdaMM steps with a uniformly random coordinate direction per step.
/// Consumes N + 2T measurements, T = number of recorded iterations.
/// `init_rng` draws the candidates, `direction_rng` the per-step axes.
OptimizeResult optimize(MeasurementOracle& oracle, const Region& region,
                        const HyperParams& hyper, Rng& init_rng,
                        Rng& direction_rng);

}  // namespace zoma
