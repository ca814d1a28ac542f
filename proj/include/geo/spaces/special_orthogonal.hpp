#pragma once

#include <cmath>
#include <numbers>

#include "geo/connection.hpp"

namespace geo {

/// Rotation group SO(n) as n x n orthogonal matrices with det +1.
class SpecialOrthogonal : public Manifold {
 public:
  explicit SpecialOrthogonal(int n);

  std::string name() const override { return "so"; }
  int n() const { return n_; }
  int dim() const override { return n_ * (n_ - 1) / 2; }
  Shape point_shape() const override { return {n_, n_}; }
  double membership_residual(const Point& x) const override;
  /// Closest rotation (polar factor with determinant fixed to +1).
  Point projection(const Point& x) const override;
  /// Symmetric part of R^T V.
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  /// Haar-distributed rotation.
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

namespace so {

/// Largest rotation angle of R (in [0, pi]).
double rotation_angle(const Matrix& r);

/// Logarithm at the identity as a skew matrix. Throws CutLocusError when
/// the rotation angle is within `cut_tol` of pi.
Matrix log_at_identity(const Matrix& r, double cut_tol = 1e-6);

}  // namespace so

namespace so3 {
/// Axis-angle vector (Rodrigues) of a rotation with angle < pi.
Vector rotation_vector_from_matrix(const Matrix& r);
Matrix matrix_from_rotation_vector(const Vector& rotation_vector);
}  // namespace so3

/// Bi-invariant metric <U, V>_R = tr(U^T V); with this normalization
/// dist(I, R) = sqrt(2) * angle for rotations in 3D.
class SOBiInvariantMetric : public RiemannianMetric {
 public:
  explicit SOBiInvariantMetric(int n);

  std::string name() const override { return "bi-invariant"; }
  double injectivity_radius() const override { return std::numbers::sqrt2 * std::numbers::pi; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return u.cwiseProduct(v).sum();
  }
  double dist_impl(const Point& a, const Point& b) const override;
};

}  // namespace geo
