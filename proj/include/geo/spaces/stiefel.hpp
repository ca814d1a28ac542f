#pragma once

#include "geo/connection.hpp"
#include "geo/numerics.hpp"

namespace geo {

/// n x p matrices with orthonormal columns.
class Stiefel : public Manifold {
 public:
  Stiefel(int n, int p);

  std::string name() const override { return "stiefel"; }
  int n() const { return n_; }
  int p() const { return p_; }
  int dim() const override { return n_ * p_ - p_ * (p_ + 1) / 2; }
  Shape point_shape() const override { return {n_, p_}; }
  double membership_residual(const Point& x) const override;
  /// Polar factor U V^T of the thin SVD.
  Point projection(const Point& x) const override;
  /// |X^T V + V^T X|
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

 private:
  int n_;
  int p_;
};

namespace stiefel {

/// tr(u^T (I - X X^T / 2) v)
double canonical_inner(const Matrix& base, const Matrix& u, const Matrix& v);
/// Geodesic of the canonical metric via the 2p x 2p block exponential.
Matrix canonical_exp(const Matrix& base, const Matrix& v);

/// Coordinates of a tangent vector X A + X_perp B in which the canonical
/// norm is the Euclidean norm: the strict upper triangle of the skew block A
/// followed by the entries of B (column-major).
Vector tangent_coords(const Matrix& base, const Matrix& v);
Matrix tangent_from_coords(const Matrix& base, const Vector& coords);

}  // namespace stiefel

/// Canonical metric (the quotient metric from SO(n)). The logarithm has no
/// closed form and is computed by shooting.
class StiefelCanonicalMetric : public RiemannianMetric {
 public:
  StiefelCanonicalMetric(int n, int p, ShootingOptions log_options = {});

  std::string name() const override { return "canonical"; }
  /// Conservative lower bound on the injectivity radius.
  double injectivity_radius() const override;

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override {
    return stiefel::canonical_inner(base, u, v);
  }

 private:
  ShootingOptions log_options_;
};

}  // namespace geo
