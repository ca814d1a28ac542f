#pragma once

#include "geo/connection.hpp"

namespace geo {

/// Symmetric positive definite n x n matrices.
class SPDMatrices : public Manifold {
 public:
  explicit SPDMatrices(int n);

  std::string name() const override { return "spd"; }
  int dim() const override { return n_ * (n_ + 1) / 2; }
  Shape point_shape() const override { return {n_, n_}; }
  /// Asymmetry of x; infinite when the smallest eigenvalue is not positive.
  double membership_residual(const Point& x) const override;
  /// Symmetrizes and clamps eigenvalues below at 1e-12.
  Point projection(const Point& x) const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

namespace spd {

// Affine-invariant metric <U, V>_P = tr(P^-1 U P^-1 V).
Matrix affine_exp(const Matrix& base, const Matrix& v);
Matrix affine_log(const Matrix& base, const Matrix& target);
double affine_dist(const Matrix& a, const Matrix& b);
Matrix affine_parallel_transport(const Matrix& v, const Matrix& base, const Matrix& direction);

// Log-Euclidean metric: pullback of the Frobenius metric by the matrix log.
Matrix log_euclidean_exp(const Matrix& base, const Matrix& v);
Matrix log_euclidean_log(const Matrix& base, const Matrix& target);
double log_euclidean_dist(const Matrix& a, const Matrix& b);

}  // namespace spd

class SPDAffineMetric : public RiemannianMetric {
 public:
  explicit SPDAffineMetric(int n);

  std::string name() const override { return "affine-invariant"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override;
  double dist_impl(const Point& a, const Point& b) const override;
};

class SPDLogEuclideanMetric : public RiemannianMetric {
 public:
  explicit SPDLogEuclideanMetric(int n);

  std::string name() const override { return "log-euclidean"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  /// The metric is flat, so transport is path independent.
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override;
  double dist_impl(const Point& a, const Point& b) const override;
};

}  // namespace geo
