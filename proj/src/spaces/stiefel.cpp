#include "geo/spaces/stiefel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "geo/linalg.hpp"
#include "geo/random.hpp"

namespace geo {

Stiefel::Stiefel(int n, int p) : n_(n), p_(p) {
  if (p < 1 || n < p) throw ContractError("Stiefel: requires 1 <= p <= n");
}

double Stiefel::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  return (x.transpose() * x - Matrix::Identity(p_, p_)).cwiseAbs().maxCoeff();
}

Point Stiefel::projection(const Point& x) const {
  const linalg::SVD s = linalg::svd(x);
  return s.u * s.vt;
}

double Stiefel::tangent_residual(const Point& base, const Matrix& v) const {
  const Matrix xv = base.transpose() * v;
  return (xv + xv.transpose()).cwiseAbs().maxCoeff();
}

Matrix Stiefel::to_tangent(const Point& base, const Matrix& v) const {
  return v - base * linalg::sym(base.transpose() * v);
}

Point Stiefel::random_point(Rng& rng) const {
  return linalg::qr(standard_normal(n_, p_, rng)).q;
}

namespace stiefel {

double canonical_inner(const Matrix& base, const Matrix& u, const Matrix& v) {
  return u.cwiseProduct(v).sum() - 0.5 * (u.transpose() * base).cwiseProduct(v.transpose() * base).sum();
}

Matrix canonical_exp(const Matrix& base, const Matrix& v) {
  const Eigen::Index p = base.cols();
  const Matrix a = linalg::skew(base.transpose() * v);
  const linalg::QR qr = linalg::householder_qr(v - base * a);
  Matrix block = Matrix::Zero(2 * p, 2 * p);
  block.topLeftCorner(p, p) = a;
  block.topRightCorner(p, p) = -qr.r.transpose();
  block.bottomLeftCorner(p, p) = qr.r;
  const Matrix e = linalg::matrix_exp(block);
  return base * e.topLeftCorner(p, p) + qr.q * e.bottomLeftCorner(p, p);
}

Vector tangent_coords(const Matrix& base, const Matrix& v) {
  const Eigen::Index n = base.rows();
  const Eigen::Index p = base.cols();
  const Matrix a = base.transpose() * v;
  const Matrix b = linalg::orthogonal_complement(base).transpose() * v;
  Vector c(p * (p - 1) / 2 + (n - p) * p);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) c(k++) = 0.5 * (a(i, j) - a(j, i));
  }
  c.tail(b.size()) = Eigen::Map<const Vector>(b.data(), b.size());
  return c;
}

Matrix tangent_from_coords(const Matrix& base, const Vector& coords) {
  const Eigen::Index n = base.rows();
  const Eigen::Index p = base.cols();
  if (coords.size() != p * (p - 1) / 2 + (n - p) * p) {
    throw ShapeError("stiefel::tangent_from_coords: size mismatch");
  }
  Matrix a = Matrix::Zero(p, p);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      a(i, j) = coords(k++);
      a(j, i) = -a(i, j);
    }
  }
  const Eigen::Map<const Matrix> b(coords.data() + k, n - p, p);
  return base * a + linalg::orthogonal_complement(base) * b;
}

}  // namespace stiefel

StiefelCanonicalMetric::StiefelCanonicalMetric(int n, int p, ShootingOptions log_options)
    : RiemannianMetric(std::make_shared<Stiefel>(n, p)), log_options_(log_options) {}

double StiefelCanonicalMetric::injectivity_radius() const { return 0.89 * std::numbers::pi; }

Point StiefelCanonicalMetric::exp_impl(const Point& base, const Matrix& v) const {
  return stiefel::canonical_exp(base, v);
}

Matrix StiefelCanonicalMetric::log_impl(const Point& base, const Point& target) const {
  if (base == target) return Matrix::Zero(base.rows(), base.cols());
  const Eigen::Index size = target.size();
  auto exp_coords = [&](const Vector& c) -> Vector {
    const Matrix y = stiefel::canonical_exp(base, stiefel::tangent_from_coords(base, c));
    return Eigen::Map<const Vector>(y.data(), size);
  };
  const Vector flat_target = Eigen::Map<const Vector>(target.data(), size);
  const Vector init = stiefel::tangent_coords(base, manifold().to_tangent(base, target - base));
  const ShootingResult shot = shoot(exp_coords, flat_target, init, log_options_);
  return stiefel::tangent_from_coords(base, shot.velocity);
}

}  // namespace geo
