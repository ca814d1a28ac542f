#pragma once

// Configurations of k landmarks on a base manifold M, stored by stacking the
// k component matrices vertically. The geometry is the product geometry.

#include <memory>

#include "geo/connection.hpp"

namespace geo {

class Landmarks : public Manifold {
 public:
  Landmarks(std::shared_ptr<const Manifold> base, int k);

  std::string name() const override { return "landmarks"; }
  const Manifold& base() const { return *base_; }
  int k() const { return k_; }
  int dim() const override { return k_ * base_->dim(); }
  Shape point_shape() const override;
  Shape tangent_shape() const override;
  /// Largest component residual.
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

  /// Component i of a stacked configuration or tangent field.
  static Matrix component(const Matrix& stacked, int i, Eigen::Index rows);
  Batch split(const Matrix& stacked) const;
  Batch split_tangent(const Matrix& stacked) const;
  static Matrix stack(const Batch& parts);

 private:
  std::shared_ptr<const Manifold> base_;
  int k_;
};

/// Product metric: componentwise exp, log and transport; dist^2 is the sum
/// of the component dist^2.
class LandmarksMetric : public RiemannianMetric {
 public:
  LandmarksMetric(std::shared_ptr<const RiemannianMetric> base, int k);

  std::string name() const override { return "product(" + base_->name() + ")"; }
  const RiemannianMetric& base_metric() const { return *base_; }
  Shape tangent_shape() const override;
  int tangent_dim() const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  double injectivity_radius() const override { return base_->injectivity_radius(); }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const override;
  double dist_impl(const Point& a, const Point& b) const override;

 private:
  const Landmarks& landmarks() const;
  Batch split_tangent(const Matrix& v) const;

  std::shared_ptr<const RiemannianMetric> base_;
};

}  // namespace geo
