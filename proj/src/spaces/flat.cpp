#include <limits>

#include "geo/random.hpp"
#include "geo/spaces/euclidean.hpp"
#include "geo/spaces/minkowski.hpp"

namespace geo {
namespace {

double flat_residual(const Point& x, int n) {
  if (x.rows() != n || x.cols() != 1) return std::numeric_limits<double>::infinity();
  return x.allFinite() ? 0.0 : std::numeric_limits<double>::infinity();
}

int checked_dim(int n, const char* who) {
  if (n < 1) throw ContractError(std::string(who) + ": dimension must be >= 1");
  return n;
}

}  // namespace

EuclideanSpace::EuclideanSpace(int n) : n_(checked_dim(n, "EuclideanSpace")) {}

double EuclideanSpace::membership_residual(const Point& x) const { return flat_residual(x, n_); }

Point EuclideanSpace::random_point(Rng& rng) const { return standard_normal(n_, 1, rng); }

EuclideanMetric::EuclideanMetric(int n) : RiemannianMetric(std::make_shared<EuclideanSpace>(n)) {}

double minkowski::inner(const Vector& u, const Vector& v) {
  if (u.size() != v.size() || u.size() == 0) throw ShapeError("minkowski::inner: size mismatch");
  return -u(0) * v(0) + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

MinkowskiSpace::MinkowskiSpace(int n) : n_(checked_dim(n, "MinkowskiSpace")) {}

double MinkowskiSpace::membership_residual(const Point& x) const { return flat_residual(x, n_); }

Point MinkowskiSpace::random_point(Rng& rng) const { return standard_normal(n_, 1, rng); }

MinkowskiMetric::MinkowskiMetric(int n)
    : PseudoRiemannianMetric(std::make_shared<MinkowskiSpace>(n)) {}

}  // namespace geo
