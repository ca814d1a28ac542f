#include "geo/spaces/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geo/linalg.hpp"
#include "geo/random.hpp"

namespace geo {
namespace grassmann {
namespace {

constexpr double kCutLocusAngle = 1e-6;

// Principal vectors a_i, b_i and angles theta_i of two subspaces given by
// orthonormal bases. The angles come from the chord |a_i - b_i|, which stays
// accurate for nearly equal subspaces where arccos(sigma) does not.
struct PrincipalPairs {
  Matrix a;
  Matrix b;
  Vector sigma;
  Vector theta;
};

PrincipalPairs principal_pairs(const Matrix& y1, const Matrix& y2) {
  const linalg::SVD s = linalg::svd(y1.transpose() * y2);
  PrincipalPairs out{y1 * s.u, y2 * s.vt.transpose(), s.singular_values,
                     Vector(s.singular_values.size())};
  for (Eigen::Index i = 0; i < out.theta.size(); ++i) {
    const double chord = (out.a.col(i) - out.b.col(i)).norm();
    out.theta(i) = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
  }
  return out;
}

Matrix commutator(const Matrix& v, const Matrix& p) { return v * p - p * v; }

}  // namespace

Matrix from_basis(const Matrix& basis) {
  const Matrix q = linalg::qr(basis).q;
  return q * q.transpose();
}

int rank(const Matrix& projection) {
  return static_cast<int>(std::lround(projection.trace()));
}

Matrix basis(const Matrix& projection, int p) {
  return linalg::sym_eig(projection).vectors.leftCols(p);
}

Vector principal_angles(const Matrix& a, const Matrix& b) {
  const int p = rank(a);
  if (p != rank(b)) throw ContractError("grassmann: subspaces of different rank", "rank_mismatch");
  Vector theta = principal_pairs(basis(a, p), basis(b, p)).theta;
  std::sort(theta.begin(), theta.end());
  return theta;
}

double dist(const Matrix& a, const Matrix& b) {
  if (shape_of(a) != shape_of(b)) throw ShapeError("grassmann::dist: shape mismatch");
  return principal_angles(a, b).norm();
}

Matrix exp(const Matrix& base, const Matrix& v) {
  const Matrix omega = commutator(v, base);
  const Matrix g = linalg::matrix_exp(omega);
  return linalg::sym(g * base * g.transpose());
}

Matrix log(const Matrix& base, const Matrix& target) {
  const int p = rank(base);
  if (p != rank(target)) throw ContractError("grassmann: subspaces of different rank", "rank_mismatch");
  const PrincipalPairs pp = principal_pairs(basis(base, p), basis(target, p));
  Matrix out = Matrix::Zero(base.rows(), base.cols());
  for (Eigen::Index i = 0; i < pp.theta.size(); ++i) {
    const double theta = pp.theta(i);
    if (theta >= std::numbers::pi / 2 - kCutLocusAngle) {
      throw CutLocusError("grassmann log: a principal angle reaches pi/2");
    }
    // (b - sigma a) has norm sin(theta); rescale it to length theta.
    const double scale = theta < 1e-8 ? 1.0 : theta / std::sin(theta);
    const Vector u = scale * (pp.b.col(i) - pp.sigma(i) * pp.a.col(i));
    out += u * pp.a.col(i).transpose();
  }
  return out + out.transpose();
}

Matrix parallel_transport(const Matrix& v, const Matrix& base, const Matrix& direction) {
  const Matrix g = linalg::matrix_exp(commutator(direction, base));
  return linalg::sym(g * v * g.transpose());
}

}  // namespace grassmann

Grassmann::Grassmann(int n, int p) : n_(n), p_(p) {
  if (p < 1 || n < p) throw ContractError("Grassmann: requires 1 <= p <= n");
}

double Grassmann::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape() || !x.allFinite()) return std::numeric_limits<double>::infinity();
  const double asym = (x - x.transpose()).cwiseAbs().maxCoeff();
  const double idem = (x * x - x).cwiseAbs().maxCoeff();
  const double trace = std::abs(x.trace() - p_) * 1e-2;
  return std::max({asym, idem, trace});
}

Point Grassmann::projection(const Point& x) const {
  const Matrix u = linalg::sym_eig(x).vectors.leftCols(p_);
  return u * u.transpose();
}

double Grassmann::tangent_residual(const Point& base, const Matrix& v) const {
  const double asym = (v - v.transpose()).cwiseAbs().maxCoeff();
  const double off = (base * v + v * base - v).cwiseAbs().maxCoeff();
  return std::max(asym, off);
}

Matrix Grassmann::to_tangent(const Point& base, const Matrix& v) const {
  const Matrix s = linalg::sym(v);
  const Matrix perp = Matrix::Identity(n_, n_) - base;
  return base * s * perp + perp * s * base;
}

Point Grassmann::random_point(Rng& rng) const {
  return grassmann::from_basis(standard_normal(n_, p_, rng));
}

GrassmannMetric::GrassmannMetric(int n, int p)
    : RiemannianMetric(std::make_shared<Grassmann>(n, p)) {}

Point GrassmannMetric::exp_impl(const Point& base, const Matrix& v) const {
  return grassmann::exp(base, v);
}

Matrix GrassmannMetric::log_impl(const Point& base, const Point& target) const {
  return grassmann::log(base, target);
}

Matrix GrassmannMetric::transport_impl(const Matrix& v, const Point& base,
                                       const Matrix& direction) const {
  return grassmann::parallel_transport(v, base, direction);
}

double GrassmannMetric::dist_impl(const Point& a, const Point& b) const {
  return grassmann::dist(a, b);
}

}  // namespace geo
