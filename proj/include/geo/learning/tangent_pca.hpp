#pragma once

#include "geo/connection.hpp"

namespace geo {

/// Principal component analysis of data lifted to the tangent space at a
/// base point. Lifted vectors are recentered at their tangent-space mean, so
/// the flat case reproduces classical PCA for any base point.
class TangentPCA {
 public:
  TangentPCA(const RiemannianMetric& metric, int n_components);

  /// Throws ContractError when n_components exceeds the tangent dimension.
  TangentPCA& fit(const Batch& data, const Point& base_point);
  /// N x n_components matrix of coefficients.
  Matrix transform(const Batch& data) const;
  /// exp(base, tangent_mean + sum_k coeffs_k * component_k), one point per row.
  Batch inverse_transform(const Matrix& coefficients) const;

  bool fitted() const { return !components_.empty(); }
  const Point& base_point() const { return base_point_; }
  /// Metric-orthonormal tangent vectors at base_point.
  const Batch& components() const { return components_; }
  /// Descending, nonnegative; covariance normalized by 1/N.
  const Vector& explained_variance() const { return explained_variance_; }
  Vector explained_variance_ratio() const;
  /// Trace of the tangent covariance.
  double total_variance() const { return total_variance_; }
  const Matrix& tangent_mean() const { return tangent_mean_; }

 private:
  void require_fitted(const char* op) const;

  const RiemannianMetric* metric_;
  int n_components_;
  Point base_point_;
  Batch components_;
  Vector explained_variance_;
  double total_variance_ = 0.0;
  Matrix tangent_mean_;
};

}  // namespace geo
