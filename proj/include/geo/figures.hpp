#pragma once

// Data behind three demonstration figures: gradient descent on S^2, a
// geodesic grid in the Poincare disk and a geodesic in SE(3).

#include <string>
#include <vector>

#include "geo/learning/gradient_descent.hpp"

namespace geo::figures {

struct SphereDescentOptions {
  /// "linear": f(x) = <a, x>, minimized at -a/|a|.
  /// "distance": f(x) = |x - a|^2 / 2, minimized at a/|a|.
  std::string field = "linear";
  Vector a = Vector::Unit(3, 2);
  Vector x0 = Vector::Unit(3, 0);
  double lr = 0.1;
  int max_iter = 200;
  double tol = 1e-8;
};

ScalarField sphere_field(const std::string& name, const Vector& a);
GradientDescentResult sphere_descent(const SphereDescentOptions& options);

struct PoincareGridOptions {
  /// Lines per family: offsets (i - (grid_size - 1)/2) * spacing.
  int grid_size = 7;
  double spacing = 0.5;
  /// Each geodesic spans parameter t in [-extent, extent] (unit speed).
  double extent = 3.0;
  int num_points = 61;
};

/// Largest hyperbolic distance from the origin allowed for grid samples.
inline constexpr double kMaxGridRadius = 12.0;

struct GridGeodesic {
  std::string family;  // "vertical" or "horizontal"
  double offset = 0.0;
  std::vector<double> t;
  Batch points;  // 2-vectors in the Poincare disk
};

/// Unit-speed geodesics crossing the x axis (or y axis) orthogonally at
/// evenly spaced hyperbolic offsets. Throws ContractError when a sample
/// would lie farther than kMaxGridRadius from the origin.
std::vector<GridGeodesic> poincare_grid(const PoincareGridOptions& options);

struct PoseSample {
  double t = 0.0;
  Matrix pose;  // 4 x 4 homogeneous
};

/// Samples of the canonical left-invariant geodesic from start to end at
/// num_points uniform times in [0, 1].
std::vector<PoseSample> se3_geodesic(const Matrix& start, const Matrix& end, int num_points);

}  // namespace geo::figures
