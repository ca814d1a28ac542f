#include "geo/spaces/spd.hpp"

#include <cmath>
#include <limits>

#include "geo/linalg.hpp"
#include "geo/random.hpp"

namespace geo {

using linalg::sym;

SPDMatrices::SPDMatrices(int n) : n_(n) {
  if (n < 1) throw ContractError("SPDMatrices: n must be >= 1");
}

double SPDMatrices::membership_residual(const Point& x) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (shape_of(x) != point_shape() || !x.allFinite()) return kInf;
  const double asym = (x - x.transpose()).cwiseAbs().maxCoeff();
  const linalg::SymEig eig = linalg::sym_eig(x);
  if (!(eig.values(n_ - 1) > 0.0)) return kInf;
  return asym;
}

Point SPDMatrices::projection(const Point& x) const {
  return linalg::sym_apply(sym(x), [](double l) { return std::max(l, 1e-12); });
}

double SPDMatrices::tangent_residual(const Point&, const Matrix& v) const {
  return (v - v.transpose()).cwiseAbs().maxCoeff();
}

Matrix SPDMatrices::to_tangent(const Point&, const Matrix& v) const { return sym(v); }

Point SPDMatrices::random_point(Rng& rng) const {
  return linalg::sym_exp(sym(standard_normal(n_, n_, rng)));
}

namespace spd {
namespace {

linalg::SymEig checked_eig(const Matrix& m, const char* op) {
  linalg::SymEig eig = linalg::sym_eig(m);
  if (!(eig.values(eig.values.size() - 1) > 0.0)) {
    throw DomainError("not_spd", std::string(op) + ": matrix is not positive definite");
  }
  return eig;
}

}  // namespace

Matrix affine_exp(const Matrix& base, const Matrix& v) {
  const linalg::SymEig eig = checked_eig(base, "spd::affine_exp");
  const Matrix sqrt_p = linalg::sym_apply(eig, [](double l) { return std::sqrt(l); });
  const Matrix inv_sqrt_p = linalg::sym_apply(eig, [](double l) { return 1.0 / std::sqrt(l); });
  return sym(sqrt_p * linalg::sym_exp(inv_sqrt_p * v * inv_sqrt_p) * sqrt_p);
}

Matrix affine_log(const Matrix& base, const Matrix& target) {
  const linalg::SymEig eig = checked_eig(base, "spd::affine_log");
  const Matrix sqrt_p = linalg::sym_apply(eig, [](double l) { return std::sqrt(l); });
  const Matrix inv_sqrt_p = linalg::sym_apply(eig, [](double l) { return 1.0 / std::sqrt(l); });
  return sym(sqrt_p * linalg::sym_log(inv_sqrt_p * target * inv_sqrt_p) * sqrt_p);
}

double affine_dist(const Matrix& a, const Matrix& b) {
  if (a == b) return 0.0;
  const Matrix inv_sqrt_a = linalg::sym_inv_sqrt(a);
  const linalg::SymEig eig = checked_eig(sym(inv_sqrt_a * b * inv_sqrt_a), "spd::affine_dist");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double l = std::log(eig.values(i));
    sum += l * l;
  }
  return std::sqrt(sum);
}

Matrix affine_parallel_transport(const Matrix& v, const Matrix& base, const Matrix& direction) {
  const linalg::SymEig eig = checked_eig(base, "spd::affine_parallel_transport");
  const Matrix sqrt_p = linalg::sym_apply(eig, [](double l) { return std::sqrt(l); });
  const Matrix inv_sqrt_p = linalg::sym_apply(eig, [](double l) { return 1.0 / std::sqrt(l); });
  const Matrix half = linalg::sym_exp(0.5 * (inv_sqrt_p * direction * inv_sqrt_p));
  const Matrix e = sqrt_p * half * inv_sqrt_p;
  return sym(e * v * e.transpose());
}

Matrix log_euclidean_exp(const Matrix& base, const Matrix& v) {
  const linalg::SymEig eig = checked_eig(base, "spd::log_euclidean_exp");
  const Matrix log_base = linalg::sym_apply(eig, [](double l) { return std::log(l); });
  return linalg::sym_exp(log_base + linalg::sym_log_derivative(eig, v));
}

Matrix log_euclidean_log(const Matrix& base, const Matrix& target) {
  const Matrix log_base = linalg::sym_log(base);
  return sym(linalg::sym_exp_derivative(linalg::sym_eig(log_base),
                                        linalg::sym_log(target) - log_base));
}

double log_euclidean_dist(const Matrix& a, const Matrix& b) {
  if (a == b) return 0.0;
  return (linalg::sym_log(b) - linalg::sym_log(a)).norm();
}

}  // namespace spd

SPDAffineMetric::SPDAffineMetric(int n) : RiemannianMetric(std::make_shared<SPDMatrices>(n)) {}

Point SPDAffineMetric::exp_impl(const Point& base, const Matrix& v) const {
  return spd::affine_exp(base, v);
}

Matrix SPDAffineMetric::log_impl(const Point& base, const Point& target) const {
  return spd::affine_log(base, target);
}

Matrix SPDAffineMetric::transport_impl(const Matrix& v, const Point& base,
                                       const Matrix& direction) const {
  return spd::affine_parallel_transport(v, base, direction);
}

double SPDAffineMetric::inner_product_impl(const Point& base, const Matrix& u,
                                           const Matrix& v) const {
  const Eigen::LDLT<Matrix> chol(base);
  return (chol.solve(u) * chol.solve(v)).trace();
}

double SPDAffineMetric::dist_impl(const Point& a, const Point& b) const {
  return spd::affine_dist(a, b);
}

SPDLogEuclideanMetric::SPDLogEuclideanMetric(int n)
    : RiemannianMetric(std::make_shared<SPDMatrices>(n)) {}

Point SPDLogEuclideanMetric::exp_impl(const Point& base, const Matrix& v) const {
  return spd::log_euclidean_exp(base, v);
}

Matrix SPDLogEuclideanMetric::log_impl(const Point& base, const Point& target) const {
  return spd::log_euclidean_log(base, target);
}

Matrix SPDLogEuclideanMetric::transport_impl(const Matrix& v, const Point& base,
                                             const Matrix& direction) const {
  const linalg::SymEig eig = linalg::sym_eig(base);
  const Matrix log_end = linalg::sym_apply(eig, [](double l) { return std::log(l); }) +
                         linalg::sym_log_derivative(eig, direction);
  return sym(linalg::sym_exp_derivative(linalg::sym_eig(log_end),
                                        linalg::sym_log_derivative(eig, v)));
}

double SPDLogEuclideanMetric::inner_product_impl(const Point& base, const Matrix& u,
                                                 const Matrix& v) const {
  const linalg::SymEig eig = linalg::sym_eig(base);
  return linalg::sym_log_derivative(eig, u).cwiseProduct(linalg::sym_log_derivative(eig, v)).sum();
}

double SPDLogEuclideanMetric::dist_impl(const Point& a, const Point& b) const {
  return spd::log_euclidean_dist(a, b);
}

}  // namespace geo
