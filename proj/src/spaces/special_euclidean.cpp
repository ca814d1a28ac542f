#include "geo/spaces/special_euclidean.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "geo/linalg.hpp"
#include "geo/random.hpp"
#include "geo/spaces/special_orthogonal.hpp"

namespace geo {

SpecialEuclidean::SpecialEuclidean(int n) : n_(n) {
  if (n < 2) throw ContractError("SpecialEuclidean: n must be >= 2");
}

double SpecialEuclidean::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  const Matrix r = x.topLeftCorner(n_, n_);
  const double orth = (r.transpose() * r - Matrix::Identity(n_, n_)).cwiseAbs().maxCoeff();
  Vector bottom = x.row(n_).transpose();
  bottom(n_) -= 1.0;
  return std::max({orth, std::abs(r.determinant() - 1.0), bottom.cwiseAbs().maxCoeff()});
}

Point SpecialEuclidean::projection(const Point& x) const {
  return se::homogeneous(SpecialOrthogonal(n_).projection(x.topLeftCorner(n_, n_)),
                         x.col(n_).head(n_));
}

double SpecialEuclidean::tangent_residual(const Point& base, const Matrix& v) const {
  const Matrix r = base.topLeftCorner(n_, n_);
  const double rot = linalg::sym(r.transpose() * v.topLeftCorner(n_, n_)).cwiseAbs().maxCoeff();
  return std::max(rot, v.row(n_).cwiseAbs().maxCoeff());
}

Matrix SpecialEuclidean::to_tangent(const Point& base, const Matrix& v) const {
  const Matrix r = base.topLeftCorner(n_, n_);
  Matrix out = Matrix::Zero(n_ + 1, n_ + 1);
  out.topLeftCorner(n_, n_) = r * linalg::skew(r.transpose() * v.topLeftCorner(n_, n_));
  out.col(n_).head(n_) = v.col(n_).head(n_);
  return out;
}

Point SpecialEuclidean::random_point(Rng& rng) const {
  const Matrix r = SpecialOrthogonal(n_).random_point(rng);
  return se::homogeneous(r, standard_normal(n_, 1, rng));
}

namespace se {

Matrix homogeneous(const Matrix& rotation, const Vector& translation) {
  const Eigen::Index n = rotation.rows();
  if (rotation.cols() != n || translation.size() != n) {
    throw ShapeError("se::homogeneous: inconsistent rotation/translation sizes");
  }
  Matrix g = Matrix::Identity(n + 1, n + 1);
  g.topLeftCorner(n, n) = rotation;
  g.col(n).head(n) = translation;
  return g;
}

Matrix rotation(const Matrix& g) {
  const Eigen::Index n = g.rows() - 1;
  return g.topLeftCorner(n, n);
}

Vector translation(const Matrix& g) {
  const Eigen::Index n = g.rows() - 1;
  return g.col(n).head(n);
}

Matrix inverse(const Matrix& g) {
  const Matrix rt = rotation(g).transpose();
  return homogeneous(rt, -rt * translation(g));
}

Vector algebra_coords(const Matrix& x) {
  const int n = static_cast<int>(x.rows()) - 1;
  Vector c(n * (n - 1) / 2 + n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) c(k++) = std::numbers::sqrt2 * 0.5 * (x(i, j) - x(j, i));
  }
  for (int i = 0; i < n; ++i) c(k++) = x(i, n);
  return c;
}

Matrix algebra_from_coords(const Vector& coords, int n) {
  if (coords.size() != n * (n - 1) / 2 + n) throw ShapeError("se::algebra_from_coords: size mismatch");
  Matrix x = Matrix::Zero(n + 1, n + 1);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      x(i, j) = coords(k) / std::numbers::sqrt2;
      x(j, i) = -x(i, j);
      ++k;
    }
  }
  for (int i = 0; i < n; ++i) x(i, n) = coords(k++);
  return x;
}

}  // namespace se

namespace {

bool is_identity(const Matrix& m) {
  return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= 1e-14;
}

Matrix top_rows(const Matrix& g) { return g.topRows(g.rows() - 1); }

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

SEInvariantMetric::SEInvariantMetric(int n)
    : SEInvariantMetric(n, {InvariantSide::kLeft, Matrix::Identity(n * (n - 1) / 2 + n,
                                                                    n * (n - 1) / 2 + n)}) {}

SEInvariantMetric::SEInvariantMetric(int n, InvariantMetricSpec spec, int n_steps)
    : RiemannianMetric(std::make_shared<SpecialEuclidean>(n)),
      n_(n),
      spec_(std::move(spec)),
      n_steps_(n_steps) {
  const int d = n * (n - 1) / 2 + n;
  if (spec_.inner_matrix_at_identity.size() == 0) spec_.inner_matrix_at_identity = Matrix::Identity(d, d);
  const Matrix& m = spec_.inner_matrix_at_identity;
  if (m.rows() != d || m.cols() != d) {
    throw ShapeError("SEInvariantMetric: inner matrix must be " + std::to_string(d) + "x" +
                     std::to_string(d));
  }
  if (!linalg::is_symmetric(m) || linalg::sym_eig(m).values(d - 1) <= 0.0) {
    throw ContractError("SEInvariantMetric: inner matrix must be symmetric positive definite");
  }
  inner_inverse_ = linalg::inverse(m);
  canonical_ = is_identity(m);
  if (n_steps_ < 1) throw ContractError("SEInvariantMetric: n_steps must be >= 1");
}

std::string SEInvariantMetric::name() const {
  return spec_.side == InvariantSide::kLeft ? "left-invariant" : "right-invariant";
}

double SEInvariantMetric::injectivity_radius() const {
  const linalg::SymEig eig = linalg::sym_eig(spec_.inner_matrix_at_identity);
  return std::numbers::sqrt2 * std::numbers::pi * std::sqrt(eig.values(eig.values.size() - 1));
}

// Geodesics of the left-invariant metric. With identity inner matrix the
// metric is the SO(n) x R^n product metric.
Matrix SEInvariantMetric::left_exp(const Matrix& base, const Matrix& v) const {
  if (canonical_) {
    const Matrix r = se::rotation(base);
    const Matrix a = v.topLeftCorner(n_, n_);
    return se::homogeneous(r * linalg::matrix_exp(linalg::skew(r.transpose() * a)),
                           se::translation(base) + v.col(n_).head(n_));
  }
  // Euler-Poincaré: M xi' = ad*_xi (M xi), g' = g xi.
  const int d = static_cast<int>(spec_.inner_matrix_at_identity.rows());
  const int m = n_ + 1;
  const Matrix& inertia = spec_.inner_matrix_at_identity;
  std::vector<Matrix> basis;
  basis.reserve(d);
  for (int k = 0; k < d; ++k) basis.push_back(se::algebra_from_coords(Vector::Unit(d, k), n_));

  auto rhs = [&](const Vector& y) {
    const Vector xi = y.head(d);
    const Eigen::Map<const Matrix> g(y.data() + d, m, m);
    const Matrix xi_hat = se::algebra_from_coords(xi, n_);
    const Vector momentum = inertia * xi;
    Vector coadjoint(d);
    for (int k = 0; k < d; ++k) {
      coadjoint(k) = momentum.dot(se::algebra_coords(xi_hat * basis[k] - basis[k] * xi_hat));
    }
    Vector dy(y.size());
    dy.head(d) = inner_inverse_ * coadjoint;
    Eigen::Map<Matrix>(dy.data() + d, m, m) = g * xi_hat;
    return dy;
  };
  Vector y(d + m * m);
  y.head(d) = se::algebra_coords(se::inverse(base) * v);
  Eigen::Map<Matrix>(y.data() + d, m, m) = base;
  const Vector end = integrate_rk4(rhs, y, n_steps_);
  return manifold().projection(Eigen::Map<const Matrix>(end.data() + d, m, m));
}

Matrix SEInvariantMetric::left_log(const Matrix& base, const Matrix& target) const {
  const Matrix r = se::rotation(base);
  Matrix product_log = Matrix::Zero(n_ + 1, n_ + 1);
  product_log.topLeftCorner(n_, n_) = r * so::log_at_identity(r.transpose() * se::rotation(target));
  product_log.col(n_).head(n_) = se::translation(target) - se::translation(base);
  if (canonical_) return product_log;

  auto exp_coords = [&](const Vector& c) {
    return flatten(top_rows(left_exp(base, base * se::algebra_from_coords(c, n_))));
  };
  ShootingOptions options;
  const Vector init = se::algebra_coords(se::inverse(base) * product_log);
  const ShootingResult shot = shoot(exp_coords, flatten(top_rows(target)), init, options);
  return base * se::algebra_from_coords(shot.velocity, n_);
}

Point SEInvariantMetric::exp_impl(const Point& base, const Matrix& v) const {
  if (spec_.side == InvariantSide::kLeft) return left_exp(base, v);
  // Inversion is an isometry from the right-invariant metric to the
  // left-invariant metric with the same inner matrix.
  const Matrix inv = se::inverse(base);
  return se::inverse(left_exp(inv, -inv * v * inv));
}

Matrix SEInvariantMetric::log_impl(const Point& base, const Point& target) const {
  if (spec_.side == InvariantSide::kLeft) return left_log(base, target);
  return -base * left_log(se::inverse(base), se::inverse(target)) * base;
}

Matrix SEInvariantMetric::transport_impl(const Matrix& v, const Point& base,
                                         const Matrix& direction) const {
  if (!canonical_ || spec_.side != InvariantSide::kLeft) {
    return RiemannianMetric::transport_impl(v, base, direction);
  }
  const Matrix r = se::rotation(base);
  const Matrix half =
      linalg::matrix_exp(0.5 * linalg::skew(r.transpose() * direction.topLeftCorner(n_, n_)));
  Matrix out = v;
  out.topLeftCorner(n_, n_) = r * half * (r.transpose() * v.topLeftCorner(n_, n_)) * half;
  return out;
}

double SEInvariantMetric::inner_product_impl(const Point& base, const Matrix& u,
                                             const Matrix& v) const {
  const Matrix inv = se::inverse(base);
  const bool left = spec_.side == InvariantSide::kLeft;
  const Vector cu = se::algebra_coords(left ? Matrix(inv * u) : Matrix(u * inv));
  const Vector cv = se::algebra_coords(left ? Matrix(inv * v) : Matrix(v * inv));
  return cu.dot(spec_.inner_matrix_at_identity * cv);
}

}  // namespace geo
