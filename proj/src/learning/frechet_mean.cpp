#include "geo/learning/frechet_mean.hpp"

#include <algorithm>
#include <cmath>

#include "geo/parallel.hpp"

namespace geo {
namespace {

struct Lift {
  Matrix mean_log;  // weighted mean of the logs
  double variance;  // weighted mean of squared norms
};

Lift lift(const RiemannianMetric& metric, const Batch& data, const std::vector<double>& w,
          double total, const Point& x) {
  Batch logs(data.size());
  std::vector<double> sq(data.size());
  parallel_for(data.size(), [&](std::size_t i) {
    logs[i] = metric.log(x, data[i]);
    sq[i] = metric.squared_norm(x, logs[i]);
  });
  // Fixed reduction order keeps the result independent of the thread count.
  Lift out{Matrix::Zero(logs[0].rows(), logs[0].cols()), 0.0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    out.mean_log += w[i] * logs[i];
    out.variance += w[i] * sq[i];
  }
  out.mean_log /= total;
  out.variance /= total;
  return out;
}

}  // namespace

FrechetMeanResult frechet_mean(const RiemannianMetric& metric, const Batch& data,
                               const std::vector<double>& weights,
                               const FrechetMeanOptions& options) {
  if (data.empty()) throw ContractError("frechet_mean: empty data", "empty_data");
  if (!weights.empty() && weights.size() != data.size()) {
    throw ShapeError("frechet_mean: " + std::to_string(weights.size()) + " weights for " +
                     std::to_string(data.size()) + " points");
  }
  if (options.max_iter < 0 || !(options.tol > 0.0) || !(options.step > 0.0)) {
    throw ContractError("frechet_mean: invalid options");
  }
  std::vector<double> w = weights.empty() ? std::vector<double>(data.size(), 1.0) : weights;
  double total = 0.0;
  for (double wi : w) {
    if (!(wi >= 0.0) || !std::isfinite(wi)) throw ContractError("frechet_mean: weights must be nonnegative");
    total += wi;
  }
  if (!(total > 0.0)) throw ContractError("frechet_mean: weights sum to zero");

  Point x;
  if (options.init) {
    x = *options.init;
  } else {
    const auto largest = std::max_element(w.begin(), w.end());  // first on ties
    x = data[static_cast<std::size_t>(largest - w.begin())];
  }
  metric.manifold().check_point(x, "frechet_mean");

  FrechetMeanResult result;
  Lift current = lift(metric, data, w, total, x);
  for (int iter = 0;; ++iter) {
    const double mean_norm = metric.norm(x, current.mean_log);
    result.final_step_norm = options.step * mean_norm;
    result.n_iter = iter;
    // Stationarity is also required of the weighted sum, which is the
    // stricter test whenever the weights add up to more than one.
    if (result.final_step_norm < options.tol && total * mean_norm < options.tol) {
      result.converged = true;
      break;
    }
    if (iter == options.max_iter) break;

    double step = options.step;
    Point candidate;
    Lift next;
    for (int halving = 0;; ++halving) {
      candidate = metric.exp(x, step * current.mean_log);
      next = lift(metric, data, w, total, candidate);
      if (next.variance <= current.variance || halving == 30) break;
      step *= 0.5;
    }
    x = std::move(candidate);
    current = std::move(next);
  }
  result.estimate = std::move(x);
  return result;
}

double frechet_variance(const RiemannianMetric& metric, const Batch& data, const Point& mean) {
  if (data.empty()) throw ContractError("frechet_variance: empty data", "empty_data");
  std::vector<double> sq(data.size());
  parallel_for(data.size(), [&](std::size_t i) { sq[i] = metric.squared_dist(mean, data[i]); });
  double sum = 0.0;
  for (double s : sq) sum += s;
  return sum / static_cast<double>(data.size());
}

}  // namespace geo
