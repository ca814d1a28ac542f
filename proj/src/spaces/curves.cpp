#include "geo/spaces/curves.hpp"

#include <cmath>
#include <limits>

#include "geo/random.hpp"

namespace geo {
namespace curves {
namespace {

void require_curve(const Matrix& c, const char* op) {
  if (c.rows() < 2 || c.cols() < 1) {
    throw ContractError(std::string(op) + ": a curve needs at least 2 samples", "too_few_samples");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (shape_of(a) != shape_of(b)) {
    throw ShapeError(std::string(op) + ": shapes " + to_string(shape_of(a)) + " and " +
                     to_string(shape_of(b)) + " differ");
  }
}

}  // namespace

double l2_inner(const Matrix& u, const Matrix& v) {
  require_same_shape(u, v, "l2_inner");
  require_curve(u, "l2_inner");
  const Eigen::Index k = u.rows();
  const double dt = 1.0 / static_cast<double>(k - 1);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double w = (i == 0 || i == k - 1) ? 0.5 : 1.0;
    sum += w * u.row(i).dot(v.row(i));
  }
  return sum * dt;
}

double l2_dist(const Matrix& c1, const Matrix& c2) {
  require_same_shape(c1, c2, "l2_dist");
  const Matrix diff = c2 - c1;
  return std::sqrt(std::max(0.0, l2_inner(diff, diff)));
}

Matrix srv_transform(const Matrix& curve) {
  require_curve(curve, "srv_transform");
  const Eigen::Index k = curve.rows();
  const double dt = 1.0 / static_cast<double>(k - 1);
  Matrix q(k - 1, curve.cols());
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    const Eigen::RowVectorXd v = (curve.row(i + 1) - curve.row(i)) / dt;
    const double speed = v.norm();
    if (!(speed > kMinSpeed)) {
      throw DomainError("vanishing_velocity",
                        "srv_transform: discrete velocity vanishes on interval " + std::to_string(i));
    }
    q.row(i) = v / std::sqrt(speed);
  }
  return q;
}

Matrix srv_inverse(const Matrix& q, const Matrix& start) {
  if (start.rows() != 1 || start.cols() != q.cols()) {
    throw ShapeError("srv_inverse: anchor must be 1 x " + std::to_string(q.cols()));
  }
  const Eigen::Index k = q.rows() + 1;
  const double dt = 1.0 / static_cast<double>(k - 1);
  Matrix c(k, q.cols());
  c.row(0) = start;
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    const double norm = q.row(i).norm();
    if (!(norm * norm > kMinSpeed)) {
      throw DomainError("vanishing_velocity",
                        "srv_inverse: velocity vanishes on interval " + std::to_string(i));
    }
    c.row(i + 1) = c.row(i) + (norm * dt) * q.row(i);
  }
  return c;
}

double srv_inner(const Matrix& q1, const Matrix& q2) {
  require_same_shape(q1, q2, "srv_inner");
  const double dt = 1.0 / static_cast<double>(q1.rows());
  return q1.cwiseProduct(q2).sum() * dt;
}

double srv_dist(const Matrix& c1, const Matrix& c2) {
  require_same_shape(c1, c2, "srv_dist");
  const Matrix diff = srv_transform(c2) - srv_transform(c1);
  return std::sqrt(std::max(0.0, srv_inner(diff, diff)));
}

}  // namespace curves

DiscretizedCurves::DiscretizedCurves(int k, int d) : k_(k), d_(d) {
  if (k < 2 || d < 1) throw ContractError("DiscretizedCurves: requires k >= 2 and d >= 1");
}

double DiscretizedCurves::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  return 0.0;
}

Point DiscretizedCurves::random_point(Rng& rng) const {
  // A random walk, so consecutive samples differ.
  Matrix c = standard_normal(k_, d_, rng) / std::sqrt(static_cast<double>(k_ - 1));
  for (int i = 1; i < k_; ++i) c.row(i) += c.row(i - 1);
  return c;
}

L2CurvesMetric::L2CurvesMetric(int k, int d)
    : RiemannianMetric(std::make_shared<DiscretizedCurves>(k, d)) {}

SRVCurvesMetric::SRVCurvesMetric(int k, int d)
    : RiemannianMetric(std::make_shared<DiscretizedCurves>(k, d)) {}

Shape SRVCurvesMetric::tangent_shape() const {
  const Shape s = manifold().point_shape();
  return {s.rows - 1, s.cols};
}

int SRVCurvesMetric::tangent_dim() const { return static_cast<int>(tangent_shape().size()); }

Point SRVCurvesMetric::exp_impl(const Point& base, const Matrix& v) const {
  return curves::srv_inverse(curves::srv_transform(base) + v, base.row(0));
}

Matrix SRVCurvesMetric::log_impl(const Point& base, const Point& target) const {
  return curves::srv_transform(target) - curves::srv_transform(base);
}

}  // namespace geo
