#pragma once

#include "geo/connection.hpp"

namespace geo {

/// R^n as column vectors.
class EuclideanSpace : public Manifold {
 public:
  explicit EuclideanSpace(int n);

  std::string name() const override { return "euclidean"; }
  int dim() const override { return n_; }
  Shape point_shape() const override { return {n_, 1}; }
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override { return x; }
  double tangent_residual(const Point&, const Matrix&) const override { return 0.0; }
  Matrix to_tangent(const Point&, const Matrix& v) const override { return v; }
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

class EuclideanMetric : public RiemannianMetric {
 public:
  explicit EuclideanMetric(int n);

  std::string name() const override { return "euclidean"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override { return base + v; }
  Matrix log_impl(const Point& base, const Point& target) const override { return target - base; }
  Matrix transport_impl(const Matrix& v, const Point&, const Matrix&) const override { return v; }
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return u.cwiseProduct(v).sum();
  }
  double dist_impl(const Point& a, const Point& b) const override { return (b - a).norm(); }
};

}  // namespace geo
