#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace geo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Every point and tangent vector is stored as a dense matrix. Vector-valued
/// manifolds use a single column.
using Point = Matrix;
using Batch = std::vector<Matrix>;

using Rng = std::mt19937_64;

struct Shape {
  Eigen::Index rows = 1;
  Eigen::Index cols = 1;

  bool operator==(const Shape&) const = default;
  Eigen::Index size() const { return rows * cols; }
  bool is_vector() const { return cols == 1; }
};

inline Shape shape_of(const Matrix& m) { return {m.rows(), m.cols()}; }

std::string to_string(const Shape& shape);

/// A tangent vector together with the point it is attached to.
struct TangentVector {
  Point base;
  Matrix coords;
};

namespace tolerance {
inline constexpr double kMembership = 1e-8;
inline constexpr double kTangency = 1e-8;
inline constexpr double kRoundTrip = 1e-6;
inline constexpr double kLinalg = 1e-10;
inline constexpr double kSmallNorm = 1e-7;
}  // namespace tolerance

}  // namespace geo
