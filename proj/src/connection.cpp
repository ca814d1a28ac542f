#include "geo/connection.hpp"

#include <cmath>

#include "geo/numerics.hpp"
#include "geo/parallel.hpp"
#include "geo/random.hpp"

namespace geo {
namespace {

void require_shape(const Matrix& m, const Shape& expected, const char* op, const char* what) {
  if (shape_of(m) != expected) {
    throw ShapeError(std::string(op) + ": " + what + " has shape " + to_string(shape_of(m)) +
                     ", expected " + to_string(expected));
  }
}

std::size_t broadcast_size(std::size_t a, std::size_t b, const char* op) {
  if (a == 0 || b == 0) throw ShapeError(std::string(op) + ": empty batch");
  if (a != b && a != 1 && b != 1) {
    throw ShapeError(std::string(op) + ": batch sizes " + std::to_string(a) + " and " +
                     std::to_string(b) + " do not broadcast");
  }
  return std::max(a, b);
}

const Matrix& at(const Batch& batch, std::size_t i) { return batch.size() == 1 ? batch[0] : batch[i]; }

}  // namespace

void Manifold::check_point(const Point& x, const char* op, double tol) const {
  if (shape_of(x) != point_shape()) {
    throw ShapeError(std::string(op) + ": point has shape " + to_string(shape_of(x)) +
                     ", expected " + to_string(point_shape()) + " for " + name());
  }
  if (!x.allFinite()) throw ContractError(std::string(op) + ": non-finite point", "not_finite");
  const double residual = membership_residual(x);
  if (!(residual <= tol)) {
    throw ContractError(std::string(op) + ": point does not belong to " + name() +
                            " (residual " + std::to_string(residual) + ")",
                        "not_on_manifold");
  }
}

Point GeodesicCurve::operator()(double t) const {
  return connection_->exp(base_, t * velocity_);
}

Batch GeodesicCurve::sample(const std::vector<double>& ts) const {
  Batch out(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { out[i] = (*this)(ts[i]); });
  return out;
}

Connection::Connection(std::shared_ptr<const Manifold> manifold) : manifold_(std::move(manifold)) {
  if (!manifold_) throw ContractError("Connection: null manifold");
}

Matrix Connection::random_tangent(const Point& base, Rng& rng) const {
  const Shape shape = tangent_shape();
  return to_tangent(base, standard_normal(shape.rows, shape.cols, rng));
}

void Connection::check_tangent(const Point& base, const Matrix& v, const char* op) const {
  require_shape(v, tangent_shape(), op, "tangent vector");
  if (!v.allFinite()) throw ContractError(std::string(op) + ": non-finite tangent vector", "not_finite");
  const double residual = tangent_residual(base, v);
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (!(residual <= tolerance::kTangency * scale)) {
    throw ContractError(std::string(op) + ": vector is not tangent at the base point (residual " +
                            std::to_string(residual) + ")",
                        "not_tangent");
  }
}

Point Connection::exp(const Point& base, const Matrix& v) const {
  manifold_->check_point(base, "exp");
  check_tangent(base, v, "exp");
  return exp_impl(base, v);
}

Matrix Connection::log(const Point& base, const Point& target) const {
  manifold_->check_point(base, "log");
  manifold_->check_point(target, "log");
  return log_impl(base, target);
}

GeodesicCurve Connection::geodesic(const Point& base, const Matrix& velocity) const {
  manifold_->check_point(base, "geodesic");
  check_tangent(base, velocity, "geodesic");
  return GeodesicCurve(*this, base, velocity);
}

GeodesicCurve Connection::geodesic_between(const Point& base, const Point& endpoint) const {
  return GeodesicCurve(*this, base, log(base, endpoint));
}

Matrix Connection::parallel_transport(const Matrix& v, const Point& base,
                                      const Matrix& direction) const {
  manifold_->check_point(base, "parallel_transport");
  check_tangent(base, v, "parallel_transport");
  check_tangent(base, direction, "parallel_transport");
  return transport_impl(v, base, direction);
}

Matrix Connection::transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const {
  return ladder_transport_along(*this, v, base, direction, kDefaultLadderRungs);
}

Batch Connection::exp(const Batch& bases, const Batch& vs) const {
  const std::size_t n = broadcast_size(bases.size(), vs.size(), "exp");
  Batch out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = exp(at(bases, i), at(vs, i)); });
  return out;
}

Batch Connection::log(const Batch& bases, const Batch& targets) const {
  const std::size_t n = broadcast_size(bases.size(), targets.size(), "log");
  Batch out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = log(at(bases, i), at(targets, i)); });
  return out;
}

Batch Connection::parallel_transport(const Batch& vs, const Batch& bases,
                                     const Batch& directions) const {
  const std::size_t n = broadcast_size(broadcast_size(vs.size(), bases.size(), "parallel_transport"),
                                       directions.size(), "parallel_transport");
  Batch out(n);
  parallel_for(n, [&](std::size_t i) {
    out[i] = parallel_transport(at(vs, i), at(bases, i), at(directions, i));
  });
  return out;
}

double PseudoRiemannianMetric::inner_product(const Point& base, const Matrix& u,
                                             const Matrix& v) const {
  manifold().check_point(base, "inner_product");
  check_tangent(base, u, "inner_product");
  check_tangent(base, v, "inner_product");
  return inner_product_impl(base, u, v);
}

double PseudoRiemannianMetric::inner_product(const TangentVector& u, const TangentVector& v) const {
  if (shape_of(u.base) != shape_of(v.base) || u.base != v.base) {
    throw ContractError("inner_product: tangent vectors have different base points",
                        "base_mismatch");
  }
  return inner_product(u.base, u.coords, v.coords);
}

std::vector<double> PseudoRiemannianMetric::inner_product(const Batch& bases, const Batch& us,
                                                          const Batch& vs) const {
  const std::size_t n = broadcast_size(broadcast_size(bases.size(), us.size(), "inner_product"),
                                       vs.size(), "inner_product");
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = inner_product(at(bases, i), at(us, i), at(vs, i)); });
  return out;
}

double RiemannianMetric::norm(const Point& base, const Matrix& v) const {
  return std::sqrt(std::max(0.0, squared_norm(base, v)));
}

double RiemannianMetric::dist(const Point& a, const Point& b) const {
  manifold().check_point(a, "dist");
  manifold().check_point(b, "dist");
  return dist_impl(a, b);
}

double RiemannianMetric::dist_impl(const Point& a, const Point& b) const {
  const Matrix v = log_impl(a, b);
  return std::sqrt(std::max(0.0, inner_product_impl(a, v, v)));
}

std::vector<double> RiemannianMetric::dist(const Batch& as, const Batch& bs) const {
  const std::size_t n = broadcast_size(as.size(), bs.size(), "dist");
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = dist(at(as, i), at(bs, i)); });
  return out;
}

Matrix canonical_basis_element(const Shape& shape, Eigen::Index index) {
  Matrix e = Matrix::Zero(shape.rows, shape.cols);
  // Row-major enumeration.
  e(index / shape.cols, index % shape.cols) = 1.0;
  return e;
}

Batch RiemannianMetric::orthonormal_tangent_basis(const Point& base) const {
  manifold().check_point(base, "orthonormal_tangent_basis");
  const Shape shape = tangent_shape();
  const int target = tangent_dim();
  Batch basis;
  for (Eigen::Index k = 0; k < shape.size() && static_cast<int>(basis.size()) < target; ++k) {
    Matrix v = to_tangent(base, canonical_basis_element(shape, k));
    // Two Gram-Schmidt passes for numerical orthogonality.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& e : basis) v -= inner_product_impl(base, v, e) * e;
    }
    const double n = std::sqrt(std::max(0.0, inner_product_impl(base, v, v)));
    if (n > 1e-8) basis.push_back(v / n);
  }
  if (static_cast<int>(basis.size()) != target) {
    throw DomainError("basis_deficient", "orthonormal_tangent_basis: could not span the tangent space");
  }
  return basis;
}

}  // namespace geo
