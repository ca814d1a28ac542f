#pragma once

#include <functional>
#include <vector>

#include "geo/connection.hpp"

namespace geo {

/// A scalar function on the ambient space together with its ambient
/// (Euclidean) gradient.
struct ScalarField {
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
};

struct GradientDescentOptions {
  double lr = 0.1;
  int max_iter = 200;
  /// Stop when the Riemannian gradient norm drops below tol.
  double tol = 1e-8;
  /// Maximum number of step halvings per iteration.
  int max_halvings = 50;
};

struct GradientDescentResult {
  Point x;
  /// Iterates x_0, x_1, ... and the corresponding values.
  Batch trace;
  std::vector<double> values;
  int n_iter = 0;
  bool converged = false;
  double grad_norm = 0.0;
};

/// The Riemannian gradient of f at x: the tangent projection of the ambient
/// gradient (valid for metrics induced by the embedding).
Matrix riemannian_gradient(const Connection& connection, const ScalarField& f, const Point& x);

/// x <- exp_x(-lr * grad f(x)), halving the step until f does not increase.
/// Stops early (unconverged) when no halving achieves descent.
GradientDescentResult riemannian_gradient_descent(const Connection& connection, const ScalarField& f,
                                                  const Point& x0,
                                                  const GradientDescentOptions& options = {});

}  // namespace geo
