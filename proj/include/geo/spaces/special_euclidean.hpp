#pragma once

#include "geo/connection.hpp"
#include "geo/numerics.hpp"

namespace geo {

/// Rigid motions SE(n) as homogeneous (n+1) x (n+1) matrices
/// [[R, t], [0, 1]]. Tangent vectors at g are [[A, b], [0, 0]] with R^T A skew.
class SpecialEuclidean : public Manifold {
 public:
  explicit SpecialEuclidean(int n);

  std::string name() const override { return "se"; }
  int n() const { return n_; }
  int dim() const override { return n_ * (n_ - 1) / 2 + n_; }
  Shape point_shape() const override { return {n_ + 1, n_ + 1}; }
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

namespace se {

Matrix homogeneous(const Matrix& rotation, const Vector& translation);
Matrix rotation(const Matrix& g);
Vector translation(const Matrix& g);
Matrix inverse(const Matrix& g);

/// Coordinates of a Lie-algebra element [[Omega, u], [0, 0]] in the basis
/// that is orthonormal for the Frobenius form: (E_ij - E_ji)/sqrt(2) for
/// i < j in lexicographic order, then the translations e_i.
Vector algebra_coords(const Matrix& x);
Matrix algebra_from_coords(const Vector& coords, int n);

}  // namespace se

/// Which group translations leave the metric unchanged.
enum class InvariantSide { kLeft, kRight };

struct InvariantMetricSpec {
  InvariantSide side = InvariantSide::kLeft;
  /// SPD matrix on the Lie algebra, in the basis of se::algebra_coords.
  Matrix inner_matrix_at_identity;
};

/// Left- or right-invariant metric on SE(n). The left-invariant metric with
/// identity inner matrix is the product of the bi-invariant SO(n) metric and
/// the Euclidean metric on translations, and uses closed forms. Other
/// metrics integrate the Euler-Poincaré equation with RK4 and invert exp by
/// shooting.
class SEInvariantMetric : public RiemannianMetric {
 public:
  /// Canonical left-invariant metric.
  explicit SEInvariantMetric(int n);
  SEInvariantMetric(int n, InvariantMetricSpec spec, int n_steps = 100);

  std::string name() const override;
  const InvariantMetricSpec& spec() const { return spec_; }
  bool is_canonical() const { return canonical_ && spec_.side == InvariantSide::kLeft; }
  double injectivity_radius() const override;

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override;

 private:
  Matrix left_exp(const Matrix& base, const Matrix& v) const;
  Matrix left_log(const Matrix& base, const Matrix& target) const;

  int n_;
  InvariantMetricSpec spec_;
  Matrix inner_inverse_;
  bool canonical_;  // identity inner matrix: product closed forms for the left metric
  int n_steps_;
};

}  // namespace geo
