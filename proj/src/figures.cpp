#include "geo/figures.hpp"

#include <cmath>

#include "geo/spaces/hyperbolic.hpp"
#include "geo/spaces/hypersphere.hpp"
#include "geo/spaces/special_euclidean.hpp"

namespace geo::figures {

ScalarField sphere_field(const std::string& name, const Vector& a) {
  if (a.size() != 3 || !a.allFinite() || a.norm() < 1e-12) {
    throw ContractError("sphere field: 'a' must be a nonzero 3-vector", "invalid_input");
  }
  if (name == "linear") {
    return {[a](const Matrix& x) { return a.dot(x.col(0)); },
            [a](const Matrix&) -> Matrix { return a; }};
  }
  if (name == "distance") {
    return {[a](const Matrix& x) { return 0.5 * (x.col(0) - a).squaredNorm(); },
            [a](const Matrix& x) -> Matrix { return x.col(0) - a; }};
  }
  throw ContractError("unknown field '" + name + "' (expected 'linear' or 'distance')", "invalid_input");
}

GradientDescentResult sphere_descent(const SphereDescentOptions& options) {
  const HypersphereMetric sphere(2);
  if (options.x0.size() != 3 || !sphere.manifold().belongs(options.x0)) {
    throw ContractError("sphere-descent: x0 must be a unit 3-vector", "invalid_input");
  }
  GradientDescentOptions gd;
  gd.lr = options.lr;
  gd.max_iter = options.max_iter;
  gd.tol = options.tol;
  return riemannian_gradient_descent(sphere, sphere_field(options.field, options.a), options.x0, gd);
}

std::vector<GridGeodesic> poincare_grid(const PoincareGridOptions& options) {
  if (options.grid_size < 1 || options.num_points < 2 || !(options.spacing > 0.0) ||
      !(options.extent > 0.0)) {
    throw ContractError("poincare-grid: grid-size >= 1, num-points >= 2, spacing > 0 and extent > 0 required",
                        "invalid_input");
  }
  const double half = 0.5 * (options.grid_size - 1);
  // The sample at (offset, t) lies at distance acosh(cosh(offset) cosh(t)).
  const double reach = std::acosh(std::cosh(half * options.spacing) * std::cosh(options.extent));
  if (!(reach <= kMaxGridRadius)) {
    throw ContractError("poincare-grid: grid reaches distance " + std::to_string(reach) +
                            " from the origin, above the limit " + std::to_string(kMaxGridRadius),
                        "invalid_input");
  }
  const HyperboloidMetric h(2);
  Vector origin = Vector::Zero(3);
  origin(0) = 1.0;

  std::vector<GridGeodesic> out;
  for (int family = 0; family < 2; ++family) {
    // Vertical lines cross the x axis; horizontal lines cross the y axis.
    const int along = family == 0 ? 1 : 2;
    const int across = family == 0 ? 2 : 1;
    for (int i = 0; i < options.grid_size; ++i) {
      GridGeodesic g;
      g.family = family == 0 ? "vertical" : "horizontal";
      g.offset = (i - half) * options.spacing;
      Vector shift = Vector::Zero(3);
      shift(along) = g.offset;
      const Vector node = hyperbolic::exp(origin, shift);
      // e_across is orthogonal to the plane of the shift, so transport fixes it.
      Vector direction = Vector::Zero(3);
      direction(across) = 1.0;
      for (int s = 0; s < options.num_points; ++s) {
        const double t = -options.extent + 2.0 * options.extent * s / (options.num_points - 1);
        g.t.push_back(t);
        g.points.push_back(hyperbolic::hyperboloid_to_ball(hyperbolic::exp(node, t * direction)));
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<PoseSample> se3_geodesic(const Matrix& start, const Matrix& end, int num_points) {
  if (num_points < 2) throw ContractError("se3-geodesic: num-points must be >= 2", "invalid_input");
  const SEInvariantMetric metric(3);
  const GeodesicCurve curve = metric.geodesic_between(start, end);
  std::vector<PoseSample> out;
  for (int i = 0; i < num_points; ++i) {
    const double t = static_cast<double>(i) / (num_points - 1);
    out.push_back({t, i == 0 ? start : curve(t)});
  }
  return out;
}

}  // namespace geo::figures
