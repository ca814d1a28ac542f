#include "geo/spaces/hyperbolic.hpp"

#include <cmath>
#include <limits>

#include "geo/random.hpp"
#include "geo/spaces/minkowski.hpp"

namespace geo {
namespace hyperbolic {

Vector exp(const Vector& base, const Vector& v) {
  const double theta = std::sqrt(std::max(0.0, minkowski::inner(v, v)));
  if (theta < tolerance::kSmallNorm) {
    const double t2 = theta * theta;
    return (1.0 + t2 / 2.0) * base + (1.0 + t2 / 6.0) * v;
  }
  return std::cosh(theta) * base + (std::sinh(theta) / theta) * v;
}

double dist(const Vector& a, const Vector& b) {
  // |a - b|_M^2 = 4 sinh^2(d / 2) on the hyperboloid; exact zero for a == b.
  const Vector diff = a - b;
  const double chord2 = std::max(0.0, minkowski::inner(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

Vector log(const Vector& base, const Vector& target) {
  const double d = dist(base, target);
  const double c = -minkowski::inner(base, target);
  const Vector w = target - c * base;  // tangent, Minkowski norm sinh(d)
  if (d < tolerance::kSmallNorm) return (1.0 - d * d / 6.0) * w;
  return (d / std::sinh(d)) * w;
}

Vector parallel_transport(const Vector& v, const Vector& base, const Vector& direction) {
  const double theta = std::sqrt(std::max(0.0, minkowski::inner(direction, direction)));
  if (theta == 0.0) return v;
  const Vector u = direction / theta;
  const double along = minkowski::inner(u, v);
  return v + along * (std::sinh(theta) * base + (std::cosh(theta) - 1.0) * u);
}

Vector ball_to_hyperboloid(const Vector& y) {
  const double r2 = y.squaredNorm();
  if (!(r2 < 1.0)) throw DomainError("outside_ball", "point is not inside the unit ball");
  const double s = 1.0 - r2;
  Vector x(y.size() + 1);
  x(0) = (1.0 + r2) / s;
  x.tail(y.size()) = (2.0 / s) * y;
  return x;
}

Vector hyperboloid_to_ball(const Vector& x) {
  return x.tail(x.size() - 1) / (1.0 + x(0));
}

Vector ball_tangent_to_hyperboloid(const Vector& y, const Vector& w) {
  const double s = 1.0 - y.squaredNorm();
  const double yw = y.dot(w);
  Vector v(y.size() + 1);
  v(0) = 4.0 * yw / (s * s);
  v.tail(y.size()) = (2.0 / s) * w + (4.0 * yw / (s * s)) * y;
  return v;
}

Vector hyperboloid_tangent_to_ball(const Vector& x, const Vector& v) {
  const Eigen::Index n = x.size() - 1;
  const double denom = 1.0 + x(0);
  return v.tail(n) / denom - (v(0) / (denom * denom)) * x.tail(n);
}

double ball_dist(const Vector& a, const Vector& b) {
  const double sa = 1.0 - a.squaredNorm();
  const double sb = 1.0 - b.squaredNorm();
  if (!(sa > 0.0) || !(sb > 0.0)) throw DomainError("outside_ball", "point is not inside the unit ball");
  return 2.0 * std::asinh((a - b).norm() / std::sqrt(sa * sb));
}

}  // namespace hyperbolic

Hyperboloid::Hyperboloid(int n) : n_(n) {
  if (n < 1) throw ContractError("Hyperboloid: dimension must be >= 1");
}

double Hyperboloid::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite() || x(0, 0) <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double form = minkowski::inner(x.col(0), x.col(0));
  return std::abs(form + 1.0) / std::max(1.0, x(0, 0) * x(0, 0));
}

Point Hyperboloid::projection(const Point& x) const {
  Point out = x;
  out(0, 0) = std::sqrt(1.0 + x.col(0).tail(n_).squaredNorm());
  return out;
}

double Hyperboloid::tangent_residual(const Point& base, const Matrix& v) const {
  return std::abs(minkowski::inner(base.col(0), v.col(0))) / std::max(1.0, base(0, 0));
}

Matrix Hyperboloid::to_tangent(const Point& base, const Matrix& v) const {
  return v + minkowski::inner(base.col(0), v.col(0)) * base;
}

Point Hyperboloid::random_point(Rng& rng) const {
  Vector x(n_ + 1);
  x.tail(n_) = standard_normal(n_, 1, rng);
  x(0) = std::sqrt(1.0 + x.tail(n_).squaredNorm());
  return x;
}

HyperboloidMetric::HyperboloidMetric(int n)
    : RiemannianMetric(std::make_shared<Hyperboloid>(n)) {}

Point HyperboloidMetric::exp_impl(const Point& base, const Matrix& v) const {
  return hyperbolic::exp(base.col(0), v.col(0));
}

Matrix HyperboloidMetric::log_impl(const Point& base, const Point& target) const {
  return hyperbolic::log(base.col(0), target.col(0));
}

Matrix HyperboloidMetric::transport_impl(const Matrix& v, const Point& base,
                                         const Matrix& direction) const {
  return hyperbolic::parallel_transport(v.col(0), base.col(0), direction.col(0));
}

double HyperboloidMetric::inner_product_impl(const Point&, const Matrix& u, const Matrix& v) const {
  return minkowski::inner(u.col(0), v.col(0));
}

double HyperboloidMetric::dist_impl(const Point& a, const Point& b) const {
  return hyperbolic::dist(a.col(0), b.col(0));
}

PoincareBall::PoincareBall(int n) : n_(n) {
  if (n < 1) throw ContractError("PoincareBall: dimension must be >= 1");
}

double PoincareBall::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite() || !(x.squaredNorm() < 1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

Point PoincareBall::projection(const Point& x) const {
  const double norm = x.norm();
  constexpr double kMaxNorm = 1.0 - 1e-10;
  return norm < kMaxNorm ? x : Point(x * (kMaxNorm / norm));
}

Point PoincareBall::random_point(Rng& rng) const {
  Vector x(n_ + 1);
  x.tail(n_) = standard_normal(n_, 1, rng);
  x(0) = std::sqrt(1.0 + x.tail(n_).squaredNorm());
  return hyperbolic::hyperboloid_to_ball(x);
}

PoincareBallMetric::PoincareBallMetric(int n)
    : RiemannianMetric(std::make_shared<PoincareBall>(n)) {}

Point PoincareBallMetric::exp_impl(const Point& base, const Matrix& v) const {
  const Vector x = hyperbolic::ball_to_hyperboloid(base.col(0));
  const Vector u = hyperbolic::ball_tangent_to_hyperboloid(base.col(0), v.col(0));
  return hyperbolic::hyperboloid_to_ball(hyperbolic::exp(x, u));
}

Matrix PoincareBallMetric::log_impl(const Point& base, const Point& target) const {
  const Vector x = hyperbolic::ball_to_hyperboloid(base.col(0));
  const Vector y = hyperbolic::ball_to_hyperboloid(target.col(0));
  return hyperbolic::hyperboloid_tangent_to_ball(x, hyperbolic::log(x, y));
}

Matrix PoincareBallMetric::transport_impl(const Matrix& v, const Point& base,
                                          const Matrix& direction) const {
  const Vector x = hyperbolic::ball_to_hyperboloid(base.col(0));
  const Vector w = hyperbolic::ball_tangent_to_hyperboloid(base.col(0), v.col(0));
  const Vector d = hyperbolic::ball_tangent_to_hyperboloid(base.col(0), direction.col(0));
  const Vector end = hyperbolic::exp(x, d);
  return hyperbolic::hyperboloid_tangent_to_ball(end, hyperbolic::parallel_transport(w, x, d));
}

double PoincareBallMetric::inner_product_impl(const Point& base, const Matrix& u,
                                              const Matrix& v) const {
  const double lambda = 2.0 / (1.0 - base.squaredNorm());
  return lambda * lambda * u.col(0).dot(v.col(0));
}

double PoincareBallMetric::dist_impl(const Point& a, const Point& b) const {
  return hyperbolic::ball_dist(a.col(0), b.col(0));
}

}  // namespace geo
