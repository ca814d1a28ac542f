#pragma once

// Abstract geometry layer. A Manifold describes points (membership,
// projection, tangent spaces). A Connection equips it with exp/log,
// geodesics and parallel transport; a RiemannianMetric adds the inner
// product, norms and distances.
//
// Every public operation validates its inputs (shape, membership, tangency)
// and then dispatches to a protected *_impl hook implemented by each space.

#include <limits>
#include <memory>
#include <string>

#include "geo/errors.hpp"
#include "geo/types.hpp"

namespace geo {

class Manifold {
 public:
  virtual ~Manifold() = default;

  virtual std::string name() const = 0;
  /// Intrinsic dimension.
  virtual int dim() const = 0;
  virtual Shape point_shape() const = 0;
  virtual Shape tangent_shape() const { return point_shape(); }

  /// Distance-like measure of how far x is from satisfying the manifold
  /// constraints; 0 on the manifold. Infinite for shape mismatches.
  virtual double membership_residual(const Point& x) const = 0;
  bool belongs(const Point& x, double tol = tolerance::kMembership) const {
    return membership_residual(x) <= tol;
  }

  /// A nearby point on the manifold.
  virtual Point projection(const Point& x) const = 0;

  /// Violation of the tangency constraint of v at base; 0 when tangent.
  virtual double tangent_residual(const Point& base, const Matrix& v) const = 0;
  /// Orthogonal (in the ambient Frobenius sense) projection onto T_base.
  virtual Matrix to_tangent(const Point& base, const Matrix& v) const = 0;

  virtual Point random_point(Rng& rng) const = 0;

  /// Throws ShapeError or ContractError("not_on_manifold") when x is invalid.
  void check_point(const Point& x, const char* op,
                   double tol = tolerance::kMembership) const;
};

class Connection;

/// t -> exp(base, t * velocity).
class GeodesicCurve {
 public:
  GeodesicCurve(const Connection& connection, Point base, Matrix velocity)
      : connection_(&connection), base_(std::move(base)), velocity_(std::move(velocity)) {}

  Point operator()(double t) const;
  Batch sample(const std::vector<double>& ts) const;

  const Point& base() const { return base_; }
  const Matrix& initial_velocity() const { return velocity_; }

 private:
  const Connection* connection_;  // must outlive the curve
  Point base_;
  Matrix velocity_;
};

class Connection {
 public:
  explicit Connection(std::shared_ptr<const Manifold> manifold);
  virtual ~Connection() = default;

  const Manifold& manifold() const { return *manifold_; }
  const std::shared_ptr<const Manifold>& manifold_ptr() const { return manifold_; }

  /// Name of the metric / connection family.
  virtual std::string name() const = 0;

  virtual Shape tangent_shape() const { return manifold_->tangent_shape(); }
  virtual int tangent_dim() const { return manifold_->dim(); }
  virtual double tangent_residual(const Point& base, const Matrix& v) const {
    return manifold_->tangent_residual(base, v);
  }
  virtual Matrix to_tangent(const Point& base, const Matrix& v) const {
    return manifold_->to_tangent(base, v);
  }
  /// Standard Gaussian ambient sample projected to the tangent space.
  Matrix random_tangent(const Point& base, Rng& rng) const;

  /// Radius of a ball (in the metric norm) on which log inverts exp.
  /// Infinite for spaces without cut locus.
  virtual double injectivity_radius() const {
    return std::numeric_limits<double>::infinity();
  }

  Point exp(const Point& base, const Matrix& v) const;
  Point exp(const TangentVector& v) const { return exp(v.base, v.coords); }
  Matrix log(const Point& base, const Point& target) const;

  GeodesicCurve geodesic(const Point& base, const Matrix& velocity) const;
  /// Geodesic from base reaching endpoint at t = 1.
  GeodesicCurve geodesic_between(const Point& base, const Point& endpoint) const;

  /// Transports v from base to exp(base, direction) along the geodesic.
  Matrix parallel_transport(const Matrix& v, const Point& base, const Matrix& direction) const;

  // Batched forms: a single base (or single second operand) broadcasts.
  Batch exp(const Batch& bases, const Batch& vs) const;
  Batch log(const Batch& bases, const Batch& targets) const;
  Batch parallel_transport(const Batch& vs, const Batch& bases, const Batch& directions) const;

  void check_tangent(const Point& base, const Matrix& v, const char* op) const;

 protected:
  virtual Point exp_impl(const Point& base, const Matrix& v) const = 0;
  virtual Matrix log_impl(const Point& base, const Point& target) const = 0;
  /// Default: pole ladder with `kDefaultLadderRungs` rungs.
  virtual Matrix transport_impl(const Matrix& v, const Point& base, const Matrix& direction) const;

  static constexpr int kDefaultLadderRungs = 100;

 private:
  std::shared_ptr<const Manifold> manifold_;
};

/// Connection with a (possibly indefinite) inner product.
class PseudoRiemannianMetric : public Connection {
 public:
  using Connection::Connection;

  double inner_product(const Point& base, const Matrix& u, const Matrix& v) const;
  /// Throws ContractError("base_mismatch") when the base points differ.
  double inner_product(const TangentVector& u, const TangentVector& v) const;
  double squared_norm(const Point& base, const Matrix& v) const {
    return inner_product(base, v, v);
  }

  std::vector<double> inner_product(const Batch& bases, const Batch& us, const Batch& vs) const;

 protected:
  virtual double inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const = 0;
};

class RiemannianMetric : public PseudoRiemannianMetric {
 public:
  using PseudoRiemannianMetric::PseudoRiemannianMetric;

  double norm(const Point& base, const Matrix& v) const;
  double norm(const TangentVector& v) const { return norm(v.base, v.coords); }
  double dist(const Point& a, const Point& b) const;
  double squared_dist(const Point& a, const Point& b) const {
    const double d = dist(a, b);
    return d * d;
  }

  std::vector<double> dist(const Batch& as, const Batch& bs) const;

  /// Metric-orthonormal basis of T_base obtained by Gram-Schmidt on the
  /// projected canonical basis of the ambient tangent representation.
  Batch orthonormal_tangent_basis(const Point& base) const;

 protected:
  /// Default: norm(log(a, b)).
  virtual double dist_impl(const Point& a, const Point& b) const;
};

/// Ambient coordinates of the canonical basis element `index` for `shape`.
Matrix canonical_basis_element(const Shape& shape, Eigen::Index index);

}  // namespace geo
