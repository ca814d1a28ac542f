#pragma once

#include <optional>
#include <vector>

#include "geo/connection.hpp"

namespace geo {

struct FrechetMeanOptions {
  int max_iter = 64;
  double tol = 1e-7;
  double step = 1.0;
  /// Starting point. Defaults to the first sample, or the sample with the
  /// largest weight when weights are given.
  std::optional<Point> init;
};

struct FrechetMeanResult {
  Point estimate;
  int n_iter = 0;
  bool converged = false;
  /// Metric norm of step * (weighted mean of logs) at the estimate.
  double final_step_norm = 0.0;
};

/// Karcher flow x <- exp_x(step * sum_i w_i log_x(x_i) / sum_i w_i). The step
/// is halved whenever it would increase the weighted variance. Converged once
/// both that update and the weighted sum of logs have norm below tol. Raises
/// DomainError (e.g. CutLocusError) when a logarithm does not exist.
FrechetMeanResult frechet_mean(const RiemannianMetric& metric, const Batch& data,
                               const std::vector<double>& weights = {},
                               const FrechetMeanOptions& options = {});

/// (1/N) sum_i dist(mean, x_i)^2.
double frechet_variance(const RiemannianMetric& metric, const Batch& data, const Point& mean);

}  // namespace geo
