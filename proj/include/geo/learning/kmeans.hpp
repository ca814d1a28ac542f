#pragma once

#include <cstdint>
#include <vector>

#include "geo/connection.hpp"
#include "geo/learning/frechet_mean.hpp"

namespace geo {

struct KMeansOptions {
  int n_clusters = 2;
  int max_iter = 100;
  /// Stop when no centroid moves farther than this.
  double tol = 1e-6;
  std::uint64_t seed = 0;
  /// Used for the centroid updates.
  FrechetMeanOptions mean_options;
};

struct KMeansModel {
  Batch centroids;
  std::vector<int> labels;
  /// Sum of squared distances to the assigned centroids.
  double inertia = 0.0;
  /// Inertia after every assignment step, starting with the seeding.
  std::vector<double> inertia_history;
  int n_iter = 0;
  bool converged = false;

  /// Index of the nearest centroid (lowest index on ties).
  int predict(const RiemannianMetric& metric, const Point& x) const;
};

/// Lloyd iterations with k-means++ seeding. An empty cluster takes over the
/// point farthest from its own centroid.
KMeansModel kmeans_fit(const RiemannianMetric& metric, const Batch& data,
                       const KMeansOptions& options);

/// Streaming K-means: the nearest centroid c, which has absorbed n samples,
/// moves to exp_c(log_c(x) / (n + 1)). Centroids are initialized by the
/// first n_clusters samples.
class OnlineKMeans {
 public:
  OnlineKMeans(const RiemannianMetric& metric, int n_clusters);

  /// Returns the index of the updated centroid, or -1 when the sample was
  /// rejected because its logarithm does not exist.
  int partial_fit(const Point& x);
  OnlineKMeans& fit(const Batch& data);
  int predict(const Point& x) const;

  int n_clusters() const { return n_clusters_; }
  /// Only the initialized centroids.
  Batch centroids() const;
  const std::vector<long>& counts() const { return counts_; }
  long n_rejected() const { return rejected_; }

 private:
  const RiemannianMetric* metric_;
  int n_clusters_;
  Batch centroids_;
  std::vector<long> counts_;
  long rejected_ = 0;
};

}  // namespace geo
