#pragma once

// Dense linear-algebra kernels used by the geometry layer. All routines are
// pure functions of their inputs and return results with fixed sign
// conventions so that identical inputs produce identical outputs.

#include <functional>

#include "geo/types.hpp"

namespace geo::linalg {

struct SymEig {
  Vector values;   // sorted descending
  Matrix vectors;  // columns are eigenvectors, largest-magnitude entry > 0
};

struct QR {
  Matrix q;  // orthonormal columns
  Matrix r;  // upper triangular, positive diagonal
};

struct SVD {
  Matrix u;
  Vector singular_values;  // descending, nonnegative
  Matrix vt;
};

/// Eigendecomposition of a symmetric matrix. The input is symmetrized.
SymEig sym_eig(const Matrix& s);

/// Thin QR of a full-column-rank matrix with cols <= rows.
QR qr(const Matrix& a, double rank_tol = 1e-12);

/// Thin Householder QR without rank checks or sign normalization. Q always
/// has orthonormal columns; R may have zero diagonal entries.
QR householder_qr(const Matrix& a);

/// Orthonormal basis of the orthogonal complement of the column span of a
/// matrix with orthonormal columns.
Matrix orthogonal_complement(const Matrix& a);

/// Thin singular value decomposition.
SVD svd(const Matrix& a);

Matrix matrix_exp(const Matrix& a);

/// Principal matrix logarithm. Throws DomainError when the spectrum touches
/// the closed negative real axis.
Matrix matrix_log(const Matrix& a);

/// f applied to the eigenvalues of a symmetric matrix.
Matrix sym_apply(const Matrix& s, const std::function<double(double)>& f);
Matrix sym_apply(const SymEig& eig, const std::function<double(double)>& f);

Matrix sym_sqrt(const Matrix& spd);
Matrix sym_inv_sqrt(const Matrix& spd);
Matrix sym_log(const Matrix& spd);
Matrix sym_exp(const Matrix& s);

Matrix inverse(const Matrix& a);

inline Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }
inline Matrix skew(const Matrix& a) { return 0.5 * (a - a.transpose()); }

bool is_symmetric(const Matrix& a, double tol = tolerance::kLinalg);

/// True when a is orthogonal with determinant +1, within tol.
bool is_rotation(const Matrix& a, double tol = 1e-12);

/// Fréchet derivative of the matrix exponential / logarithm at a symmetric
/// point, applied to a symmetric direction (Daleckii-Krein formula).
Matrix sym_exp_derivative(const SymEig& at, const Matrix& direction);
Matrix sym_log_derivative(const SymEig& at, const Matrix& direction);

// Rotation helpers shared by SO(n), SE(n) and matrix_log.
Matrix hat3(const Vector& w);
Vector vee3(const Matrix& skew);
Matrix rodrigues(const Vector& rotation_vector);
/// Rotation vector of a 3x3 rotation with angle < pi. Throws DomainError at pi.
Vector rotation_vector(const Matrix& rotation);

}  // namespace geo::linalg
