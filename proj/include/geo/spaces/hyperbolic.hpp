#pragma once

#include "geo/connection.hpp"

namespace geo {

/// Hyperbolic space H^n. Points live on the upper sheet of the hyperboloid
/// <x, x>_M = -1 in Minkowski space R^{n+1}; the Poincaré ball is a view
/// obtained by stereographic projection from (-1, 0, ..., 0).
namespace hyperbolic {

Vector exp(const Vector& base, const Vector& v);
Vector log(const Vector& base, const Vector& target);
double dist(const Vector& a, const Vector& b);
Vector parallel_transport(const Vector& v, const Vector& base, const Vector& direction);

/// Throws DomainError("outside_ball") when |y| >= 1.
Vector ball_to_hyperboloid(const Vector& y);
Vector hyperboloid_to_ball(const Vector& x);
/// Pushes a ball tangent vector at y forward to the hyperboloid, and back.
Vector ball_tangent_to_hyperboloid(const Vector& y, const Vector& w);
Vector hyperboloid_tangent_to_ball(const Vector& x, const Vector& v);

/// Distance in the ball model, evaluated directly in ball coordinates.
double ball_dist(const Vector& a, const Vector& b);

}  // namespace hyperbolic

class Hyperboloid : public Manifold {
 public:
  explicit Hyperboloid(int n);

  std::string name() const override { return "hyperbolic"; }
  int dim() const override { return n_; }
  Shape point_shape() const override { return {n_ + 1, 1}; }
  /// |<x,x>_M + 1| relative to x_0^2; infinite on the lower sheet.
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

class HyperboloidMetric : public RiemannianMetric {
 public:
  explicit HyperboloidMetric(int n);

  std::string name() const override { return "hyperbolic"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override;
  double dist_impl(const Point& a, const Point& b) const override;
};

/// Open unit ball in R^n.
class PoincareBall : public Manifold {
 public:
  explicit PoincareBall(int n);

  std::string name() const override { return "poincare_ball"; }
  int dim() const override { return n_; }
  Shape point_shape() const override { return {n_, 1}; }
  /// 0 strictly inside the ball, infinite otherwise.
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override;
  double tangent_residual(const Point&, const Matrix&) const override { return 0.0; }
  Matrix to_tangent(const Point&, const Matrix& v) const override { return v; }
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

/// Hyperbolic metric in ball coordinates, lambda(y)^2 <u, v> with
/// lambda(y) = 2 / (1 - |y|^2). exp/log/transport go through the hyperboloid.
class PoincareBallMetric : public RiemannianMetric {
 public:
  explicit PoincareBallMetric(int n);

  std::string name() const override { return "hyperbolic"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override;
  double dist_impl(const Point& a, const Point& b) const override;
};

}  // namespace geo
