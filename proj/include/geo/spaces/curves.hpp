#pragma once

// Open curves in R^d sampled at k points on a uniform grid over [0, 1]. A
// curve is a k x d matrix, one sample per row.

#include "geo/connection.hpp"

namespace geo {

namespace curves {

/// Velocities below this norm make the SRV transform undefined.
inline constexpr double kMinSpeed = 1e-10;

/// Trapezoid-weighted L2 inner product of two k x d fields on the nodes.
double l2_inner(const Matrix& u, const Matrix& v);
double l2_dist(const Matrix& c1, const Matrix& c2);

/// q_i = v_i / sqrt|v_i| with v_i the forward difference (c_{i+1} - c_i)/dt.
/// Returns a (k-1) x d matrix. Throws DomainError("vanishing_velocity").
Matrix srv_transform(const Matrix& curve);
/// Inverse of srv_transform, anchored at the first sample `start` (1 x d).
Matrix srv_inverse(const Matrix& q, const Matrix& start);
/// Midpoint-rule inner product of two (k-1) x d SRV fields.
double srv_inner(const Matrix& q1, const Matrix& q2);
double srv_dist(const Matrix& c1, const Matrix& c2);

}  // namespace curves

class DiscretizedCurves : public Manifold {
 public:
  DiscretizedCurves(int k, int d);

  std::string name() const override { return "curves"; }
  int k() const { return k_; }
  int d() const { return d_; }
  int dim() const override { return k_ * d_; }
  Shape point_shape() const override { return {k_, d_}; }
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override { return x; }
  double tangent_residual(const Point&, const Matrix&) const override { return 0.0; }
  Matrix to_tangent(const Point&, const Matrix& v) const override { return v; }
  Point random_point(Rng& rng) const override;

 private:
  int k_;
  int d_;
};

/// Flat L2 metric; tangent vectors are k x d displacement fields.
class L2CurvesMetric : public RiemannianMetric {
 public:
  L2CurvesMetric(int k, int d);

  std::string name() const override { return "l2"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override { return base + v; }
  Matrix log_impl(const Point& base, const Point& target) const override { return target - base; }
  Matrix transport_impl(const Matrix& v, const Point&, const Matrix&) const override { return v; }
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return curves::l2_inner(u, v);
  }
  double dist_impl(const Point& a, const Point& b) const override { return curves::l2_dist(a, b); }
};

/// Square-root-velocity metric. The SRV transform is a flat chart, so tangent
/// vectors are (k-1) x d fields in SRV space, exp and log are linear there,
/// and exp maps back with the inverse transform anchored at the base curve's
/// first sample. Curves differing by a translation are at distance zero.
class SRVCurvesMetric : public RiemannianMetric {
 public:
  SRVCurvesMetric(int k, int d);

  std::string name() const override { return "srv"; }
  Shape tangent_shape() const override;
  int tangent_dim() const override;
  double tangent_residual(const Point&, const Matrix&) const override { return 0.0; }
  Matrix to_tangent(const Point&, const Matrix& v) const override { return v; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point&, const Matrix&) const override { return v; }
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return curves::srv_inner(u, v);
  }
  double dist_impl(const Point& a, const Point& b) const override { return curves::srv_dist(a, b); }
};

}  // namespace geo
