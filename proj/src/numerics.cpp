#include "geo/numerics.hpp"

#include <cmath>

#include "geo/connection.hpp"
#include "geo/errors.hpp"

namespace geo {

ChristoffelField::ChristoffelField(int dim, Evaluator evaluator, ChartDomain domain)
    : dim_(dim), evaluator_(std::move(evaluator)), domain_(std::move(domain)) {
  if (dim_ < 1) throw ContractError("ChristoffelField: dimension must be >= 1");
  if (!evaluator_) throw ContractError("ChristoffelField: missing evaluator");
}

ChristoffelField ChristoffelField::flat(int dim) {
  return ChristoffelField(dim, [dim](const Vector&) {
    return Coefficients(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim));
  });
}

ChristoffelField ChristoffelField::from_metric(int dim, MetricTensor metric, ChartDomain domain,
                                               double h) {
  auto evaluator = [dim, metric = std::move(metric), h](const Vector& x) {
    // dg[l](i, j) = d g_ij / d x^l
    std::vector<Matrix> dg(static_cast<std::size_t>(dim));
    for (int l = 0; l < dim; ++l) {
      Vector xp = x, xm = x;
      xp(l) += h;
      xm(l) -= h;
      dg[l] = (metric(xp) - metric(xm)) / (2.0 * h);
    }
    const Matrix g_inv = metric(x).inverse();
    Coefficients gamma(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        // first-kind symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
        Vector first(dim);
        for (int l = 0; l < dim; ++l) {
          first(l) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        const Vector second = g_inv * first;
        for (int k = 0; k < dim; ++k) gamma[k](i, j) = second(k);
      }
    }
    return gamma;
  };
  return ChristoffelField(dim, std::move(evaluator), std::move(domain));
}

bool ChristoffelField::in_domain(const Vector& x) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  return !domain_ || domain_(x);
}

ChristoffelField::Coefficients ChristoffelField::operator()(const Vector& x) const {
  if (x.size() != dim_) throw ShapeError("ChristoffelField: coordinate dimension mismatch");
  if (!in_domain(x)) throw DomainError("chart_domain", "point left the chart domain");
  return evaluator_(x);
}

Vector ChristoffelField::acceleration(const Vector& x, const Vector& xdot) const {
  const Coefficients gamma = (*this)(x);
  Vector acc(dim_);
  for (int k = 0; k < dim_; ++k) acc(k) = -xdot.dot(gamma[k] * xdot);
  return acc;
}

Vector integrate_rk4(const std::function<Vector(const Vector&)>& f, Vector y, int n_steps,
                     const std::function<void(const Vector&)>& observer) {
  if (n_steps < 1) throw ContractError("integrate_rk4: n_steps must be >= 1");
  const double h = 1.0 / n_steps;
  if (observer) observer(y);
  for (int step = 0; step < n_steps; ++step) {
    const Vector k1 = f(y);
    const Vector k2 = f(y + 0.5 * h * k1);
    const Vector k3 = f(y + 0.5 * h * k2);
    const Vector k4 = f(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer(y);
  }
  return y;
}

Vector exp_by_integration(const ChristoffelField& christoffels, const Vector& base,
                          const Vector& velocity, int n_steps) {
  const int d = christoffels.dim();
  if (base.size() != d || velocity.size() != d) {
    throw ShapeError("exp_by_integration: coordinate dimension mismatch");
  }
  if (!christoffels.in_domain(base)) {
    throw DomainError("chart_domain", "exp_by_integration: base outside the chart domain");
  }
  Vector state(2 * d);
  state << base, velocity;
  auto rhs = [&](const Vector& y) {
    Vector dy(2 * d);
    dy << y.tail(d), christoffels.acceleration(y.head(d), y.tail(d));
    return dy;
  };
  const Vector end = integrate_rk4(rhs, state, n_steps);
  if (!christoffels.in_domain(end.head(d))) {
    throw DomainError("chart_domain", "exp_by_integration: geodesic left the chart domain");
  }
  return end.head(d);
}

ShootingResult shoot(const std::function<Vector(const Vector&)>& exp_coords, const Vector& target,
                     Vector initial, const ShootingOptions& options) {
  ShootingResult result;
  result.velocity = std::move(initial);
  Vector r = exp_coords(result.velocity) - target;
  result.residual = r.norm();
  const double stop = options.tol * options.refine;
  const Eigen::Index n = result.velocity.size();

  while (result.residual > stop && result.n_iter < options.max_iter) {
    ++result.n_iter;
    Matrix jac(r.size(), n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector vp = result.velocity, vm = result.velocity;
      vp(j) += options.fd_step;
      vm(j) -= options.fd_step;
      jac.col(j) = (exp_coords(vp) - exp_coords(vm)) / (2.0 * options.fd_step);
    }
    const Vector step = jac.colPivHouseholderQr().solve(-r);

    double damping = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving) {
      const Vector candidate = result.velocity + damping * step;
      Vector rc;
      try {
        rc = exp_coords(candidate) - target;
      } catch (const DomainError&) {
        damping *= 0.5;
        continue;
      }
      if (rc.norm() < result.residual) {
        result.velocity = candidate;
        r = rc;
        result.residual = rc.norm();
        improved = true;
        break;
      }
      damping *= 0.5;
    }
    if (!improved) break;  // stagnated at the attainable accuracy
  }
  if (!(result.residual <= options.tol)) {
    throw ConvergenceError("shooting did not converge (residual " +
                               std::to_string(result.residual) + ")",
                           result.residual);
  }
  return result;
}

Vector log_by_shooting(const ChristoffelField& christoffels, const Vector& base,
                       const Vector& target, const ShootingOptions& options, int n_steps) {
  if (!christoffels.in_domain(target)) {
    throw DomainError("chart_domain", "log_by_shooting: target outside the chart domain");
  }
  if (target == base) return Vector::Zero(base.size());
  auto exp_coords = [&](const Vector& v) { return exp_by_integration(christoffels, base, v, n_steps); };
  return shoot(exp_coords, target, target - base, options).velocity;
}

Matrix ladder_transport_along(const Connection& connection, const Matrix& v, const Point& base,
                              const Matrix& direction, int n_rungs) {
  if (n_rungs < 1) throw ContractError("ladder transport: n_rungs must be >= 1");
  if (direction.cwiseAbs().maxCoeff() == 0.0) return v;
  // The transported vector is scaled down so every parallelogram stays small.
  const double scale = 1.0 / n_rungs;
  Matrix w = scale * v;
  Point current = base;
  for (int i = 0; i < n_rungs; ++i) {
    const Point next = connection.exp(base, (static_cast<double>(i + 1) / n_rungs) * direction);
    const Point mid = connection.exp(base, ((i + 0.5) / n_rungs) * direction);
    const Point shot = connection.exp(current, w);
    const Point reflected = connection.exp(mid, -connection.log(mid, shot));
    w = -connection.log(next, reflected);
    current = next;
  }
  return w / scale;
}

Matrix transport_by_ladder(const Connection& connection, const Matrix& v, const Point& base,
                           const Point& endpoint, int n_rungs) {
  return ladder_transport_along(connection, v, base, connection.log(base, endpoint), n_rungs);
}

}  // namespace geo
