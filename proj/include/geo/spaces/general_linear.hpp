#pragma once

#include "geo/connection.hpp"

namespace geo {

/// Invertible n x n matrices.
class GeneralLinear : public Manifold {
 public:
  explicit GeneralLinear(int n);

  std::string name() const override { return "gl"; }
  int dim() const override { return n_ * n_; }
  Shape point_shape() const override { return {n_, n_}; }
  /// 0 when |det| > 1e-10, infinite otherwise.
  double membership_residual(const Point& x) const override;
  Point projection(const Point& x) const override;
  double tangent_residual(const Point&, const Matrix&) const override { return 0.0; }
  Matrix to_tangent(const Point&, const Matrix& v) const override { return v; }
  Point random_point(Rng& rng) const override;

 private:
  int n_;
};

namespace gl {
bool belongs(const Matrix& a);
Matrix group_exp(const Matrix& a);
/// Principal logarithm; DomainError on singular or negative-real spectrum.
Matrix group_log(const Matrix& a);
}  // namespace gl

/// Canonical Cartan-Schouten connection of GL(n): geodesics are translated
/// one-parameter subgroups t -> g exp(t g^-1 v). Not metric.
class GLGroupConnection : public Connection {
 public:
  explicit GLGroupConnection(int n);

  std::string name() const override { return "group"; }

 protected:
  Point exp_impl(const Point& base, const Matrix& v) const override;
  Matrix log_impl(const Point& base, const Point& target) const override;
  Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const override;
};

}  // namespace geo
