#include "zoma/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zoma {

void HyperParams::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("invalid hyperparameter: " + what);
  };
  if (!(step_size > 0.0)) fail("step_size must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) fail("beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) fail("beta2 must be in [0, 1)");
  if (!(mu > 0.0)) fail("mu must be > 0");
  if (!(dim_factor > 0.0)) fail("dim_factor must be > 0");
  if (!(epsilon >= 0.0)) fail("epsilon must be >= 0");
  if (num_init_candidates < 1) fail("num_init_candidates must be >= 1");
  if (max_iterations < 0) fail("max_iterations must be >= 0");
  if (early_stop_window < 1) fail("early_stop_window must be >= 1");
  if (!(early_stop_tolerance >= 0.0)) fail("early_stop_tolerance must be >= 0");
}

Position project(const Position& position, const Region& region) {
  const double h = region.half();
  return {std::clamp(position.x, -h, h), std::clamp(position.y, -h, h)};
}

ZoGradient zo_gradient(MeasurementOracle& oracle, const Region& region,
                       const Position& position, double mu, int axis,
                       double dim_factor) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("smoothing radius mu must be positive");
  }
  if (axis != 0 && axis != 1) {
    throw std::invalid_argument("direction axis must be 0 or 1");
  }
  Position plus = position;
  Position minus = position;
  (axis == 0 ? plus.x : plus.y) += mu;
  (axis == 0 ? minus.x : minus.y) -= mu;

  ZoGradient out;
  out.power_plus = std::norm(oracle.measure(project(plus, region)));
  out.power_minus = std::norm(oracle.measure(project(minus, region)));
  out.gradient = {0.0, 0.0};
  out.gradient[axis] =
      dim_factor / (2.0 * mu) * (out.power_plus - out.power_minus);
  return out;
}

CorrectedMoments bias_corrected(const OptimizerState& state,
                                const HyperParams& hyper) {
  if (state.t < 1) {
    throw std::invalid_argument("bias correction needs t >= 1");
  }
  const double bias1 = 1.0 - std::pow(hyper.beta1, state.t);
  const double bias2 = 1.0 - std::pow(hyper.beta2, state.t);
  CorrectedMoments out;
  for (std::size_t i = 0; i < 2; ++i) {
    out.m_hat[i] = state.m[i] / bias1;
    out.v_hat[i] = state.v[i] / bias2;
  }
  return out;
}

Vec2 update_step(const CorrectedMoments& moments, const HyperParams& hyper) {
  Vec2 step{0.0, 0.0};
  for (std::size_t i = 0; i < 2; ++i) {
    const double denom = std::sqrt(moments.v_hat[i]) + hyper.epsilon;
    // denom == 0 only when every gradient so far was 0 on this coordinate.
    step[i] = denom > 0.0 ? hyper.step_size * moments.m_hat[i] / denom : 0.0;
  }
  return step;
}

OptimizerState adamm_step(const OptimizerState& state, const Vec2& gradient,
                          const HyperParams& hyper, const Region& region) {
  OptimizerState next = state;
  next.t = state.t + 1;
  for (std::size_t i = 0; i < 2; ++i) {
    next.m[i] = hyper.beta1 * state.m[i] + (1.0 - hyper.beta1) * gradient[i];
    next.v[i] = hyper.beta2 * state.v[i] +
                (1.0 - hyper.beta2) * gradient[i] * gradient[i];
  }
  const Vec2 step = update_step(bias_corrected(next, hyper), hyper);
  next.position = project(
      {state.position.x + step[0], state.position.y + step[1]}, region);
  return next;
}

InitResult init_position(MeasurementOracle& oracle, const Region& region,
                         int num_candidates, Rng& rng) {
  if (num_candidates < 1) {
    throw std::invalid_argument("need at least one initialization candidate");
  }
  InitResult out;
  out.candidates.reserve(static_cast<std::size_t>(num_candidates));
  double best = -1.0;
  for (int n = 0; n < num_candidates; ++n) {
    const double x = rng.uniform(-region.half(), region.half());
    const double y = rng.uniform(-region.half(), region.half());
    const Position candidate{x, y};
    out.candidates.push_back(candidate);
    const double power = std::norm(oracle.measure(candidate));
    if (power > best) {
      best = power;
      out.position = candidate;
      out.power = power;
    }
  }
  return out;
}

OptimizeResult optimize(MeasurementOracle& oracle, const Region& region,
                        const HyperParams& hyper, Rng& init_rng,
                        Rng& direction_rng) {
  hyper.validate();
  const std::uint64_t start_count = oracle.measurement_count();

  const InitResult init =
      init_position(oracle, region, hyper.num_init_candidates, init_rng);
  OptimizeResult out;
  out.trajectory.initial = init.position;
  out.trajectory.initial_power = init.power;

  OptimizerState state;
  state.position = init.position;
  int small_steps = 0;
  for (int it = 1; it <= hyper.max_iterations; ++it) {
    const int axis = direction_rng.index(2);
    const ZoGradient g = zo_gradient(oracle, region, state.position, hyper.mu,
                                     axis, hyper.dim_factor);
    const OptimizerState next = adamm_step(state, g.gradient, hyper, region);

    IterationRecord rec;
    rec.iteration = it;
    rec.position = state.position;
    rec.power_plus = g.power_plus;
    rec.power_minus = g.power_minus;
    rec.axis = axis;
    rec.gradient = g.gradient;
    rec.next = next.position;
    out.trajectory.iterations.push_back(rec);

    const double moved = std::hypot(next.position.x - state.position.x,
                                    next.position.y - state.position.y);
    state = next;
    if (hyper.early_stop) {
      small_steps = moved < hyper.early_stop_tolerance ? small_steps + 1 : 0;
      if (small_steps >= hyper.early_stop_window) break;
    }
  }
  out.position = state.position;
  out.trajectory.measurements = oracle.measurement_count() - start_count;
  return out;
}

}  // namespace zoma
