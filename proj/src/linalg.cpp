#include "geo/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "geo/errors.hpp"

namespace geo {

std::string to_string(const Shape& shape) {
  return std::to_string(shape.rows) + "x" + std::to_string(shape.cols);
}

namespace linalg {
namespace {

void require_square(const Matrix& a, const char* op) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw ShapeError(std::string(op) + ": expected a non-empty square matrix, got " +
                     to_string(shape_of(a)));
  }
}

// Makes the largest-magnitude entry of every column positive. Ties resolve to
// the first such entry.
void fix_column_signs(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > best + 1e-14) {
        best = std::abs(v(i, j));
        arg = i;
      }
    }
    if (v(arg, j) < 0.0) v.col(j) = -v.col(j);
  }
}

double divided_difference(double a, double b, double fa, double fb, double dfa) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= 1e-12 * scale) return dfa;
  return (fa - fb) / (a - b);
}

}  // namespace

SymEig sym_eig(const Matrix& s) {
  require_square(s, "sym_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym(s));
  if (solver.info() != Eigen::Success) {
    throw DomainError("eig_failed", "sym_eig: eigensolver did not converge");
  }
  const Eigen::Index n = s.rows();
  SymEig out{Vector(n), Matrix(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  fix_column_signs(out.vectors);
  return out;
}

QR qr(const Matrix& a, double rank_tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (n > m || n == 0) {
    throw ShapeError("qr: expected cols <= rows, got " + to_string(shape_of(a)));
  }
  Eigen::HouseholderQR<Matrix> house(a);
  QR out;
  out.q = house.householderQ() * Matrix::Identity(m, n);
  out.r = house.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const double scale = std::max(a.norm(), 1e-300);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(out.r(i, i)) <= rank_tol * scale) {
      throw DomainError("rank_deficient", "qr: input is rank deficient");
    }
    if (out.r(i, i) < 0.0) {
      out.r.row(i) = -out.r.row(i);
      out.q.col(i) = -out.q.col(i);
    }
  }
  return out;
}

QR householder_qr(const Matrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (n > m || n == 0) {
    throw ShapeError("householder_qr: expected cols <= rows, got " + to_string(shape_of(a)));
  }
  Eigen::HouseholderQR<Matrix> house(a);
  return {house.householderQ() * Matrix::Identity(m, n),
          house.matrixQR().topRows(n).triangularView<Eigen::Upper>()};
}

Matrix orthogonal_complement(const Matrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (n > m) throw ShapeError("orthogonal_complement: expected cols <= rows");
  Eigen::HouseholderQR<Matrix> house(a);
  const Matrix full = house.householderQ() * Matrix::Identity(m, m);
  return full.rightCols(m - n);
}

SVD svd(const Matrix& a) {
  if (a.size() == 0) throw ShapeError("svd: empty matrix");
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV().transpose()};
}

Matrix sym_apply(const SymEig& eig, const std::function<double(double)>& f) {
  Vector mapped = eig.values.unaryExpr(f);
  return eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
}

Matrix sym_apply(const Matrix& s, const std::function<double(double)>& f) {
  return sym_apply(sym_eig(s), f);
}

namespace {
SymEig spd_eig(const Matrix& spd, const char* op) {
  SymEig eig = sym_eig(spd);
  if (eig.values(eig.values.size() - 1) <= 0.0) {
    throw DomainError("not_spd", std::string(op) + ": matrix is not positive definite");
  }
  return eig;
}
}  // namespace

Matrix sym_sqrt(const Matrix& spd) {
  return sym_apply(spd_eig(spd, "sym_sqrt"), [](double x) { return std::sqrt(x); });
}

Matrix sym_inv_sqrt(const Matrix& spd) {
  return sym_apply(spd_eig(spd, "sym_inv_sqrt"),
                   [](double x) { return 1.0 / std::sqrt(x); });
}

Matrix sym_log(const Matrix& spd) {
  return sym_apply(spd_eig(spd, "sym_log"), [](double x) { return std::log(x); });
}

Matrix sym_exp(const Matrix& s) {
  return sym_apply(s, [](double x) { return std::exp(x); });
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

bool is_rotation(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const Eigen::Index n = a.rows();
  if ((a.transpose() * a - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(a.determinant() - 1.0) <= tol;
}

Matrix matrix_exp(const Matrix& a) {
  require_square(a, "matrix_exp");
  if (is_symmetric(a, 0.0)) return sym_exp(a);
  return a.exp();
}

Matrix matrix_log(const Matrix& a) {
  require_square(a, "matrix_log");
  const Eigen::Index n = a.rows();
  if (is_symmetric(a, 0.0)) {
    SymEig eig = sym_eig(a);
    if (eig.values(n - 1) > 0.0) {
      return sym_apply(eig, [](double x) { return std::log(x); });
    }
    throw DomainError("log_domain", "matrix_log: nonpositive eigenvalue");
  }
  if (n == 2 && is_rotation(a)) {
    const double angle = std::atan2(a(1, 0), a(0, 0));
    if (std::abs(angle) >= std::numbers::pi) {
      throw DomainError("log_domain", "matrix_log: rotation by pi has no principal log");
    }
    Matrix out(2, 2);
    out << 0.0, -angle, angle, 0.0;
    return out;
  }
  if (n == 3 && is_rotation(a)) return hat3(rotation_vector(a));

  Eigen::EigenSolver<Matrix> eig(a, /*computeEigenvectors=*/false);
  if (eig.info() != Eigen::Success) {
    throw DomainError("eig_failed", "matrix_log: eigensolver did not converge");
  }
  const double scale = std::max(a.norm(), 1e-300);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> lambda = eig.eigenvalues()(i);
    if (std::abs(lambda) <= 1e-14 * scale) {
      throw DomainError("singular", "matrix_log: singular matrix");
    }
    if (lambda.real() < 0.0 && std::abs(lambda.imag()) <= 1e-12 * std::abs(lambda)) {
      throw DomainError("log_domain", "matrix_log: eigenvalue on the negative real axis");
    }
  }
  return a.log();
}

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw DomainError("singular", "inverse: singular matrix");
  return lu.inverse();
}

Matrix sym_exp_derivative(const SymEig& at, const Matrix& direction) {
  const Eigen::Index n = at.values.size();
  Matrix d = at.vectors.transpose() * sym(direction) * at.vectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = at.values(i);
      const double b = at.values(j);
      d(i, j) *= divided_difference(a, b, std::exp(a), std::exp(b), std::exp(a));
    }
  }
  return at.vectors * d * at.vectors.transpose();
}

Matrix sym_log_derivative(const SymEig& at, const Matrix& direction) {
  const Eigen::Index n = at.values.size();
  Matrix d = at.vectors.transpose() * sym(direction) * at.vectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = at.values(i);
      const double b = at.values(j);
      d(i, j) *= divided_difference(a, b, std::log(a), std::log(b), 1.0 / a);
    }
  }
  return at.vectors * d * at.vectors.transpose();
}

Matrix hat3(const Vector& w) {
  if (w.size() != 3) throw ShapeError("hat3: expected a 3-vector");
  Matrix k(3, 3);
  k << 0.0, -w(2), w(1),
       w(2), 0.0, -w(0),
       -w(1), w(0), 0.0;
  return k;
}

Vector vee3(const Matrix& k) {
  if (k.rows() != 3 || k.cols() != 3) throw ShapeError("vee3: expected 3x3");
  Vector w(3);
  w << k(2, 1), k(0, 2), k(1, 0);
  return w;
}

Matrix rodrigues(const Vector& rotation_vector) {
  const double theta = rotation_vector.norm();
  const Matrix k = hat3(rotation_vector);
  double a, b;
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return Matrix::Identity(3, 3) + a * k + b * k * k;
}

Vector rotation_vector(const Matrix& r) {
  if (r.rows() != 3 || r.cols() != 3) throw ShapeError("rotation_vector: expected 3x3");
  const Vector w = 0.5 * vee3(r - r.transpose());  // sin(theta) * axis
  const double c = 0.5 * (r.trace() - 1.0);
  const double s = w.norm();
  const double theta = std::atan2(s, c);
  if (std::numbers::pi - theta < 1e-12) {
    throw DomainError("log_domain", "rotation_vector: rotation angle is pi");
  }
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    return w * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0);
  }
  if (theta < std::numbers::pi - 1e-3) return w * (theta / s);

  // Near pi, sin(theta) is too small to recover the axis from the skew part.
  const Matrix b = 0.5 * (r + r.transpose()) - c * Matrix::Identity(3, 3);
  Eigen::Index i = 0;
  b.diagonal().maxCoeff(&i);
  Vector axis = b.col(i) / std::sqrt((1.0 - c) * b(i, i));
  axis.normalize();
  if (axis.dot(w) < 0.0) axis = -axis;
  return theta * axis;
}

}  // namespace linalg
}  // namespace geo
