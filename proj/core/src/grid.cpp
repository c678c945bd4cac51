#include "zoma/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zoma {

SquareGrid::SquareGrid(const Region& region, double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  // Absorb rounding in side/resolution (e.g. 4 / 0.05 = 79.999...).
  const double ratio = region.side() / resolution;
  const auto steps = static_cast<int>(std::floor(ratio + 1e-9));
  axis_.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    axis_.push_back(std::min(-region.half() + i * resolution, region.half()));
  }
}

Position SquareGrid::at(std::size_t index) const {
  const std::size_t n = axis_.size();
  return {axis_[index % n], axis_[index / n]};
}

}  // namespace zoma
