#pragma once

#include <cstdint>
#include <numbers>

#include "geo/connection.hpp"

namespace geo {

/// Closed-form geometry of the unit sphere S^n in R^{n+1}.
namespace sphere {

Vector exp(const Vector& base, const Vector& v);
/// Throws CutLocusError when target is within 1e-7 (in angle) of -base.
Vector log(const Vector& base, const Vector& target);
double dist(const Vector& a, const Vector& b);
/// Transports v from base along the great circle with initial velocity
/// `direction`.
Vector parallel_transport(const Vector& v, const Vector& base, const Vector& direction);

/// `count` points uniform on S^n (normalized standard normals).
std::vector<Vector> random_uniform(int n, std::size_t count, std::uint64_t seed);

}  // namespace sphere

class Hypersphere : public Manifold {
 public:
  explicit Hypersphere(int n);

  std::string name() const override { return "hypersphere"; }
  int dim() const override { return n_; }
  Shape point_shape() const override { return {n_ + 1, 1}; }
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override;
  double tangent_residual(const Point& base, const Matrix& v) const override;
  Matrix to_tangent(const Point& base, const Matrix& v) const override;
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

/// Metric induced by the embedding in R^{n+1}.
class HypersphereMetric : public RiemannianMetric {
 public:
  explicit HypersphereMetric(int n);

  std::string name() const override { return "hypersphere"; }
  double injectivity_radius() const override { return std::numbers::pi; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return u.col(0).dot(v.col(0));
  }
  double dist_impl(const Point& a, const Point& b) const override;
};

}  // namespace geo
