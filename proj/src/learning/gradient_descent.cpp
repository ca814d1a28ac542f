#include "geo/learning/gradient_descent.hpp"

#include <cmath>

namespace geo {

Matrix riemannian_gradient(const Connection& connection, const ScalarField& f, const Point& x) {
  return connection.to_tangent(x, f.gradient(x));
}

GradientDescentResult riemannian_gradient_descent(const Connection& connection, const ScalarField& f,
                                                  const Point& x0,
                                                  const GradientDescentOptions& options) {
  if (!f.value || !f.gradient) throw ContractError("riemannian_gradient_descent: incomplete scalar field");
  if (!(options.lr > 0.0) || options.max_iter < 0) {
    throw ContractError("riemannian_gradient_descent: invalid options");
  }
  connection.manifold().check_point(x0, "riemannian_gradient_descent");

  GradientDescentResult result;
  Point x = x0;
  double fx = f.value(x);
  result.trace.push_back(x);
  result.values.push_back(fx);
  for (int iter = 0;; ++iter) {
    const Matrix g = riemannian_gradient(connection, f, x);
    result.grad_norm = g.norm();
    result.n_iter = iter;
    if (result.grad_norm < options.tol) {
      result.converged = true;
      break;
    }
    if (iter == options.max_iter) break;

    double lr = options.lr;
    bool accepted = false;
    Point candidate;
    double fc = 0.0;
    for (int h = 0; h <= options.max_halvings; ++h, lr *= 0.5) {
      candidate = connection.exp(x, -lr * g);
      fc = f.value(candidate);
      if (fc <= fx) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    x = std::move(candidate);
    fx = fc;
    result.trace.push_back(x);
    result.values.push_back(fx);
  }
  result.x = std::move(x);
  return result;
}

}  // namespace geo
