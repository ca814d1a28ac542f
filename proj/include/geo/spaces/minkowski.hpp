#pragma once

#include "geo/connection.hpp"

namespace geo {

namespace minkowski {
/// Bilinear form of signature (-, +, ..., +).
double inner(const Vector& u, const Vector& v);
}  // namespace minkowski

/// R^n with the flat Lorentzian form; first coordinate is time-like.
class MinkowskiSpace : public Manifold {
 public:
  explicit MinkowskiSpace(int n);

  std::string name() const override { return "minkowski"; }
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

/// Indefinite flat metric: exp is addition, log subtraction.
class MinkowskiMetric : public PseudoRiemannianMetric {
 public:
  explicit MinkowskiMetric(int n);

  std::string name() const override { return "minkowski"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override { return base + v; }
  Matrix log_impl(const Point& base, const Point& target) const override { return target - base; }
  Matrix transport_impl(const Matrix& v, const Point&, const Matrix&) const override { return v; }
  double inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const override {
    return minkowski::inner(u.col(0), v.col(0));
  }
};

}  // namespace geo
