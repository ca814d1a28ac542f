#pragma once

#include <numbers>

#include "geo/connection.hpp"

namespace geo {

/// Closed-form geometry of Gr(n, p) in the projection-matrix representation.
/// A tangent vector at P is a symmetric V with PV + VP = V.
namespace grassmann {

/// Projection onto the column span of a full-rank n x p basis.
Matrix from_basis(const Matrix& basis);
/// Orthonormal basis (n x p) of the range of a rank-p projection.
Matrix basis(const Matrix& projection, int p);
/// Rank of a projection matrix, read off its trace.
int rank(const Matrix& projection);

/// Principal angles between the ranges of two rank-p projections, ascending.
Vector principal_angles(const Matrix& a, const Matrix& b);

/// sqrt of the sum of squared principal angles. Throws ContractError
/// ("rank_mismatch") when the ranks differ.
double dist(const Matrix& a, const Matrix& b);
Matrix exp(const Matrix& base, const Matrix& v);
/// Throws CutLocusError when some principal angle is >= pi/2 - 1e-6.
Matrix log(const Matrix& base, const Matrix& target);
Matrix parallel_transport(const Matrix& v, const Matrix& base, const Matrix& direction);

}  // namespace grassmann

class Grassmann : public Manifold {
 public:
  Grassmann(int n, int p);

  std::string name() const override { return "grassmann"; }
  int n() const { return n_; }
  int p() const { return p_; }
  int dim() const override { return p_ * (n_ - p_); }
  Shape point_shape() const override { return {n_, n_}; }
  /// max of |P - P^T|, |P^2 - P| and |tr P - p| / 100 (trace is checked at 1e-6).
  double membership_residual(const Point& x) const override;
  /// Projection onto the span of the top p eigenvectors of sym(x).
  Point projection(const Point& x) const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

 private:
  int n_;
  int p_;
};

/// Metric <U, V> = tr(UV) / 2, under which the norm of the logarithm equals
/// the principal-angle distance.
class GrassmannMetric : public RiemannianMetric {
 public:
  GrassmannMetric(int n, int p);

  std::string name() const override { return "canonical"; }
  double injectivity_radius() const override { return std::numbers::pi / 2; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return 0.5 * u.cwiseProduct(v.transpose()).sum();
  }
  double dist_impl(const Point& a, const Point& b) const override;
};

}  // namespace geo
