#include "geo/spaces/general_linear.hpp"

#include <cmath>
#include <limits>

#include "geo/linalg.hpp"
#include "geo/random.hpp"

namespace geo {

GeneralLinear::GeneralLinear(int n) : n_(n) {
  if (n < 1) throw ContractError("GeneralLinear: n must be >= 1");
}

double GeneralLinear::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  return gl::belongs(x) ? 0.0 : std::numeric_limits<double>::infinity();
}

Point GeneralLinear::projection(const Point& x) const {
  if (gl::belongs(x)) return x;
  // Lift small singular values.
  linalg::SVD s = linalg::svd(x);
  s.singular_values = s.singular_values.cwiseMax(1e-5);
  return s.u * s.singular_values.asDiagonal() * s.vt;
}

Point GeneralLinear::random_point(Rng& rng) const {
  for (;;) {
    Matrix a = standard_normal(n_, n_, rng);
    if (gl::belongs(a)) return a;
  }
}

namespace gl {

bool belongs(const Matrix& a) {
  return a.rows() == a.cols() && a.allFinite() && std::abs(a.determinant()) > 1e-10;
}

Matrix group_exp(const Matrix& a) { return linalg::matrix_exp(a); }

Matrix group_log(const Matrix& a) {
  if (!belongs(a)) throw DomainError("singular", "GL log: matrix is singular");
  return linalg::matrix_log(a);
}

}  // namespace gl

GLGroupConnection::GLGroupConnection(int n) : Connection(std::make_shared<GeneralLinear>(n)) {}

Point GLGroupConnection::exp_impl(const Point& base, const Matrix& v) const {
  return base * gl::group_exp(linalg::inverse(base) * v);
}

Matrix GLGroupConnection::log_impl(const Point& base, const Point& target) const {
  return base * gl::group_log(linalg::inverse(base) * target);
}

Matrix GLGroupConnection::transport_impl(const Matrix& v, const Point& base,
                                         const Matrix& direction) const {
  const Matrix inv = linalg::inverse(base);
  const Matrix half = linalg::matrix_exp(0.5 * (inv * direction));
  return base * half * (inv * v) * half;
}

}  // namespace geo
