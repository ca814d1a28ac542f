#include "geo/learning/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "geo/parallel.hpp"
#include "geo/random.hpp"

namespace geo {
namespace {

int nearest(const RiemannianMetric& metric, const Batch& centroids, const Point& x, double* d2) {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    const double d = metric.squared_dist(centroids[j], x);
    if (d < best_d2) {
      best_d2 = d;
      best = static_cast<int>(j);
    }
  }
  if (d2) *d2 = best_d2;
  return best;
}

Batch seed_plus_plus(const RiemannianMetric& metric, const Batch& data, int k, Rng& rng) {
  const std::size_t n = data.size();
  std::vector<bool> chosen(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  Batch centroids;
  auto take = [&](std::size_t idx) {
    chosen[idx] = true;
    centroids.push_back(data[idx]);
    const Point& c = centroids.back();
    std::vector<double> fresh(n);
    parallel_for(n, [&](std::size_t i) { fresh[i] = metric.squared_dist(c, data[i]); });
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], fresh[i]);
  };
  take(std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n))));
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    const double u = uniform01(rng) * total;
    std::size_t pick = n;
    if (total > 0.0) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (d2[i] > 0.0 && u < acc) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // rounding at the top end
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a centroid: fall back to unused indices.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    take(pick);
  }
  return centroids;
}

// Assigns every point to its nearest centroid. An empty cluster receives the
// point farthest from its centroid among clusters with several members.
double assign(const RiemannianMetric& metric, const Batch& data, const Batch& centroids,
              std::vector<int>& labels) {
  const std::size_t n = data.size();
  std::vector<double> d2(n);
  labels.assign(n, 0);
  parallel_for(n, [&](std::size_t i) { labels[i] = nearest(metric, centroids, data[i], &d2[i]); });

  std::vector<int> sizes(centroids.size(), 0);
  for (int l : labels) ++sizes[l];
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    if (sizes[j] > 0) continue;
    std::size_t far = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (sizes[labels[i]] > 1 && (far == n || d2[i] > d2[far])) far = i;
    }
    if (far == n) break;  // fewer distinct points than clusters
    --sizes[labels[far]];
    labels[far] = static_cast<int>(j);
    ++sizes[j];
    d2[far] = metric.squared_dist(centroids[j], data[far]);
  }
  double inertia = 0.0;
  for (double d : d2) inertia += d;
  return inertia;
}

}  // namespace

int KMeansModel::predict(const RiemannianMetric& metric, const Point& x) const {
  if (centroids.empty()) throw ContractError("KMeansModel::predict: no centroids", "not_fitted");
  return nearest(metric, centroids, x, nullptr);
}

KMeansModel kmeans_fit(const RiemannianMetric& metric, const Batch& data,
                       const KMeansOptions& options) {
  if (options.n_clusters < 1 || static_cast<std::size_t>(options.n_clusters) > data.size()) {
    throw ContractError("kmeans_fit: n_clusters must be between 1 and the number of points",
                        "invalid_n_clusters");
  }
  if (options.max_iter < 0 || !(options.tol >= 0.0)) throw ContractError("kmeans_fit: invalid options");
  for (const Point& x : data) metric.manifold().check_point(x, "kmeans_fit");

  Rng rng(options.seed);
  KMeansModel model;
  model.centroids = seed_plus_plus(metric, data, options.n_clusters, rng);
  model.inertia = assign(metric, data, model.centroids, model.labels);
  model.inertia_history.push_back(model.inertia);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const int k = options.n_clusters;
    std::vector<Batch> members(k);
    for (std::size_t i = 0; i < data.size(); ++i) members[model.labels[i]].push_back(data[i]);
    double movement = 0.0;
    for (int j = 0; j < k; ++j) {
      if (members[j].empty()) continue;
      FrechetMeanOptions mean_options = options.mean_options;
      mean_options.init = model.centroids[j];
      const Point updated = frechet_mean(metric, members[j], {}, mean_options).estimate;
      movement = std::max(movement, metric.dist(model.centroids[j], updated));
      model.centroids[j] = updated;
    }
    model.inertia = assign(metric, data, model.centroids, model.labels);
    model.inertia_history.push_back(model.inertia);
    model.n_iter = iter;
    if (movement < options.tol) {
      model.converged = true;
      break;
    }
  }
  return model;
}

OnlineKMeans::OnlineKMeans(const RiemannianMetric& metric, int n_clusters)
    : metric_(&metric), n_clusters_(n_clusters) {
  if (n_clusters < 1) throw ContractError("OnlineKMeans: n_clusters must be >= 1", "invalid_n_clusters");
}

int OnlineKMeans::partial_fit(const Point& x) {
  metric_->manifold().check_point(x, "OnlineKMeans::partial_fit");
  if (static_cast<int>(centroids_.size()) < n_clusters_) {
    centroids_.push_back(x);
    counts_.push_back(1);
    return static_cast<int>(centroids_.size()) - 1;
  }
  try {
    const int j = nearest(*metric_, centroids_, x, nullptr);
    const Matrix v = metric_->log(centroids_[j], x);
    centroids_[j] = metric_->exp(centroids_[j], v / static_cast<double>(counts_[j] + 1));
    ++counts_[j];
    return j;
  } catch (const DomainError&) {
    ++rejected_;
    return -1;
  }
}

OnlineKMeans& OnlineKMeans::fit(const Batch& data) {
  for (const Point& x : data) partial_fit(x);
  return *this;
}

int OnlineKMeans::predict(const Point& x) const {
  if (centroids_.empty()) throw ContractError("OnlineKMeans::predict: no samples seen", "not_fitted");
  metric_->manifold().check_point(x, "OnlineKMeans::predict");
  return nearest(*metric_, centroids_, x, nullptr);
}

Batch OnlineKMeans::centroids() const { return centroids_; }

}  // namespace geo
