#pragma once

#include "geo/types.hpp"

namespace geo {

/// Matrix of independent standard normal draws, filled column by column.
inline Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

}  // namespace geo

namespace geo {

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// sequence is identical across standard library implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace geo
