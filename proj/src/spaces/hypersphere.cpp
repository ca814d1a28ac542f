#include "geo/spaces/hypersphere.hpp"

#include <cmath>
#include <limits>

#include "geo/random.hpp"

namespace geo {
namespace sphere {
namespace {
constexpr double kCutLocusAngle = 1e-7;
}  // namespace

Vector exp(const Vector& base, const Vector& v) {
  const double theta = v.norm();
  if (theta < tolerance::kSmallNorm) {
    const double t2 = theta * theta;
    return (1.0 - t2 / 2.0) * base + (1.0 - t2 / 6.0) * v;
  }
  return std::cos(theta) * base + (std::sin(theta) / theta) * v;
}

Vector log(const Vector& base, const Vector& target) {
  const double c = base.dot(target);
  const Vector w = target - c * base;
  const double s = w.norm();
  const double theta = std::atan2(s, c);
  if (std::numbers::pi - theta < kCutLocusAngle) {
    throw CutLocusError("sphere log: target is antipodal to the base point");
  }
  if (theta < tolerance::kSmallNorm) return (1.0 + theta * theta / 6.0) * w;
  return (theta / s) * w;
}

double dist(const Vector& a, const Vector& b) {
  const double c = a.dot(b);
  return std::atan2((b - c * a).norm(), c);
}

Vector parallel_transport(const Vector& v, const Vector& base, const Vector& direction) {
  const double theta = direction.norm();
  if (theta == 0.0) return v;
  const Vector u = direction / theta;
  const double along = u.dot(v);
  return v + along * ((std::cos(theta) - 1.0) * u - std::sin(theta) * base);
}

std::vector<Vector> random_uniform(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw ContractError("sphere::random_uniform: n must be >= 1");
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  while (out.size() < count) {
    Vector x = standard_normal(n + 1, 1, rng);
    const double norm = x.norm();
    if (norm > 1e-12) out.push_back(x / norm);
  }
  return out;
}

}  // namespace sphere

Hypersphere::Hypersphere(int n) : n_(n) {
  if (n < 1) throw ContractError("Hypersphere: dimension must be >= 1");
}

double Hypersphere::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  return std::abs(x.norm() - 1.0);
}

Point Hypersphere::projection(const Point& x) const {
  const double norm = x.norm();
  if (norm < 1e-300) throw DomainError("zero_vector", "Hypersphere: cannot project the origin");
  return x / norm;
}

double Hypersphere::tangent_residual(const Point& base, const Matrix& v) const {
  return std::abs(base.col(0).dot(v.col(0)));
}

Matrix Hypersphere::to_tangent(const Point& base, const Matrix& v) const {
  return v - base.col(0).dot(v.col(0)) * base;
}

Point Hypersphere::random_point(Rng& rng) const {
  for (;;) {
    Vector x = standard_normal(n_ + 1, 1, rng);
    const double norm = x.norm();
    if (norm > 1e-12) return x / norm;
  }
}

HypersphereMetric::HypersphereMetric(int n)
    : RiemannianMetric(std::make_shared<Hypersphere>(n)) {}

Point HypersphereMetric::exp_impl(const Point& base, const Matrix& v) const {
  return sphere::exp(base.col(0), v.col(0));
}

Matrix HypersphereMetric::log_impl(const Point& base, const Point& target) const {
  return sphere::log(base.col(0), target.col(0));
}

Matrix HypersphereMetric::transport_impl(const Matrix& v, const Point& base,
                                         const Matrix& direction) const {
  return sphere::parallel_transport(v.col(0), base.col(0), direction.col(0));
}

double HypersphereMetric::dist_impl(const Point& a, const Point& b) const {
  return sphere::dist(a.col(0), b.col(0));
}

}  // namespace geo
