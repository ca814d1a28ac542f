#include "geo/spaces/special_orthogonal.hpp"

#include <Eigen/Eigenvalues>
#include <limits>

#include "geo/linalg.hpp"
#include "geo/random.hpp"

namespace geo {

SpecialOrthogonal::SpecialOrthogonal(int n) : n_(n) {
  if (n < 2) throw ContractError("SpecialOrthogonal: n must be >= 2");
}

double SpecialOrthogonal::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  const double orth = (x.transpose() * x - Matrix::Identity(n_, n_)).cwiseAbs().maxCoeff();
  return std::max(orth, std::abs(x.determinant() - 1.0));
}

Point SpecialOrthogonal::projection(const Point& x) const {
  const linalg::SVD s = linalg::svd(x);
  Matrix u = s.u;
  if ((u * s.vt).determinant() < 0.0) u.col(n_ - 1) = -u.col(n_ - 1);
  return u * s.vt;
}

double SpecialOrthogonal::tangent_residual(const Point& base, const Matrix& v) const {
  return linalg::sym(base.transpose() * v).cwiseAbs().maxCoeff();
}

Matrix SpecialOrthogonal::to_tangent(const Point& base, const Matrix& v) const {
  return base * linalg::skew(base.transpose() * v);
}

Point SpecialOrthogonal::random_point(Rng& rng) const {
  Matrix q = linalg::qr(standard_normal(n_, n_, rng)).q;
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

namespace so {

double rotation_angle(const Matrix& r) {
  if (r.rows() == 2) return std::abs(std::atan2(r(1, 0), r(0, 0)));
  if (r.rows() == 3) {
    const Vector w = 0.5 * linalg::vee3(r - r.transpose());
    return std::atan2(w.norm(), 0.5 * (r.trace() - 1.0));
  }
  Eigen::EigenSolver<Matrix> eig(r, false);
  double angle = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    angle = std::max(angle, std::abs(std::arg(eig.eigenvalues()(i))));
  }
  return angle;
}

Matrix log_at_identity(const Matrix& r, double cut_tol) {
  if (rotation_angle(r) >= std::numbers::pi - cut_tol) {
    throw CutLocusError("SO(n) log: rotation angle is pi (cut locus)");
  }
  return linalg::skew(linalg::matrix_log(r));
}

}  // namespace so

namespace so3 {

Vector rotation_vector_from_matrix(const Matrix& r) { return linalg::rotation_vector(r); }

Matrix matrix_from_rotation_vector(const Vector& rotation_vector) {
  return linalg::rodrigues(rotation_vector);
}

}  // namespace so3

SOBiInvariantMetric::SOBiInvariantMetric(int n)
    : RiemannianMetric(std::make_shared<SpecialOrthogonal>(n)) {}

Point SOBiInvariantMetric::exp_impl(const Point& base, const Matrix& v) const {
  return base * linalg::matrix_exp(linalg::skew(base.transpose() * v));
}

Matrix SOBiInvariantMetric::log_impl(const Point& base, const Point& target) const {
  return base * so::log_at_identity(base.transpose() * target);
}

Matrix SOBiInvariantMetric::transport_impl(const Matrix& v, const Point& base,
                                           const Matrix& direction) const {
  // Along R exp(tX), the left-trivialized vector evolves as exp(-tX/2) W exp(tX/2).
  const Matrix half = linalg::matrix_exp(0.5 * linalg::skew(base.transpose() * direction));
  return base * half * (base.transpose() * v) * half;
}

double SOBiInvariantMetric::dist_impl(const Point& a, const Point& b) const {
  // |log(R)|_F^2 is the sum of squared eigen-angles; defined up to angle pi.
  const Matrix relative = a.transpose() * b;
  if (relative.rows() <= 3) return std::numbers::sqrt2 * so::rotation_angle(relative);
  Eigen::EigenSolver<Matrix> eig(relative, false);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double angle = std::arg(eig.eigenvalues()(i));
    sum += angle * angle;
  }
  return std::sqrt(sum);
}

}  // namespace geo
