#pragma once

#include <vector>

#include "zoma/channel.hpp"

namespace zoma {

/// Grid searches treat values within this relative distance of the running
/// best as ties, so round-off on a flat surface keeps the first point.
inline constexpr double kTieTolerance = 1e-12;

/// Uniform square grid over a region: floor(side/resolution) + 1 points per
/// axis starting at -side/2 with the given spacing. When the side is an
/// integer multiple of the resolution both edges are included. Points are
/// ordered row-major (y outer, x inner).
class SquareGrid {
 public:
  SquareGrid(const Region& region, double resolution);

  int points_per_axis() const { return static_cast<int>(axis_.size()); }
  std::size_t size() const { return axis_.size() * axis_.size(); }
  const std::vector<double>& axis() const { return axis_; }

  /// Row-major index -> position.
  Position at(std::size_t index) const;

 private:
  std::vector<double> axis_;
};

}  // namespace zoma
