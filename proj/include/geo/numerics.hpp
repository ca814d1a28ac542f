#pragma once

// Numerical fallbacks for geometry without closed forms: geodesic ODE
// integration from Christoffel symbols, logarithms by shooting, and parallel
// transport by pole ladder.

#include <functional>
#include <vector>

#include "geo/types.hpp"

namespace geo {

class Connection;

/// Christoffel symbols of a chart: coefficients[k](i, j) = Gamma^k_{ij}.
class ChristoffelField {
 public:
  using Coefficients = std::vector<Matrix>;
  using Evaluator = std::function<Coefficients(const Vector&)>;
  using MetricTensor = std::function<Matrix(const Vector&)>;
  using ChartDomain = std::function<bool(const Vector&)>;

  ChristoffelField(int dim, Evaluator evaluator, ChartDomain domain = {});

  /// Levi-Civita symbols of the metric tensor g(x), with the coordinate
  /// derivatives of g taken by central differences of step h.
  static ChristoffelField from_metric(int dim, MetricTensor metric, ChartDomain domain = {},
                                      double h = 1e-5);
  static ChristoffelField flat(int dim);

  int dim() const { return dim_; }
  bool in_domain(const Vector& x) const;
  /// Throws DomainError("chart_domain") outside the chart.
  Coefficients operator()(const Vector& x) const;

  /// -Gamma^k_{ij} xdot^i xdot^j
  Vector acceleration(const Vector& x, const Vector& xdot) const;

 private:
  int dim_;
  Evaluator evaluator_;
  ChartDomain domain_;
};

/// Fixed-step classical RK4 on ydot = f(y) over t in [0, 1]. `observer` (if
/// set) is called with every intermediate state, including the initial one.
Vector integrate_rk4(const std::function<Vector(const Vector&)>& f, Vector y, int n_steps,
                     const std::function<void(const Vector&)>& observer = {});

/// Geodesic endpoint x(1) of xddot^k + Gamma^k_ij xdot^i xdot^j = 0 with
/// x(0) = base, xdot(0) = velocity.
Vector exp_by_integration(const ChristoffelField& christoffels, const Vector& base,
                          const Vector& velocity, int n_steps = 100);

struct ShootingOptions {
  int max_iter = 100;
  double tol = 1e-6;
  double fd_step = 1e-7;
  /// Iteration continues until the residual drops below tol * refine.
  double refine = 1e-4;
};

struct ShootingResult {
  Vector velocity;
  int n_iter = 0;
  double residual = 0.0;
};

/// Damped Gauss-Newton on r(c) = exp(c) - target, with a central-difference
/// Jacobian. The step is halved while the residual increases. Throws
/// ConvergenceError (carrying the residual) if it ends above options.tol.
ShootingResult shoot(const std::function<Vector(const Vector&)>& exp_coords,
                     const Vector& target, Vector initial, const ShootingOptions& options = {});

/// Chart logarithm by shooting through exp_by_integration, started from the
/// chart difference target - base.
Vector log_by_shooting(const ChristoffelField& christoffels, const Vector& base,
                       const Vector& target, const ShootingOptions& options = {},
                       int n_steps = 100);

/// Pole-ladder parallel transport of v from base to endpoint along the
/// geodesic joining them, using n_rungs geodesic segments.
Matrix transport_by_ladder(const Connection& connection, const Matrix& v, const Point& base,
                           const Point& endpoint, int n_rungs = 20);

/// Same as transport_by_ladder, with the geodesic given by its initial
/// velocity instead of its endpoint.
Matrix ladder_transport_along(const Connection& connection, const Matrix& v, const Point& base,
                              const Matrix& direction, int n_rungs = 20);

}  // namespace geo
