#include "geo/spaces/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geo {

Landmarks::Landmarks(std::shared_ptr<const Manifold> base, int k) : base_(std::move(base)), k_(k) {
  if (!base_) throw ContractError("Landmarks: null base manifold");
  if (k < 1) throw ContractError("Landmarks: k must be >= 1");
}

Shape Landmarks::point_shape() const {
  const Shape s = base_->point_shape();
  return {s.rows * k_, s.cols};
}

Shape Landmarks::tangent_shape() const {
  const Shape s = base_->tangent_shape();
  return {s.rows * k_, s.cols};
}

Matrix Landmarks::component(const Matrix& stacked, int i, Eigen::Index rows) {
  return stacked.middleRows(static_cast<Eigen::Index>(i) * rows, rows);
}

Batch Landmarks::split(const Matrix& stacked) const {
  if (shape_of(stacked) != point_shape()) {
    throw ShapeError("Landmarks: configuration has shape " + to_string(shape_of(stacked)) +
                     ", expected " + to_string(point_shape()));
  }
  Batch out(k_);
  for (int i = 0; i < k_; ++i) out[i] = component(stacked, i, base_->point_shape().rows);
  return out;
}

Batch Landmarks::split_tangent(const Matrix& stacked) const {
  if (shape_of(stacked) != tangent_shape()) {
    throw ShapeError("Landmarks: tangent field has shape " + to_string(shape_of(stacked)) +
                     ", expected " + to_string(tangent_shape()));
  }
  Batch out(k_);
  for (int i = 0; i < k_; ++i) out[i] = component(stacked, i, base_->tangent_shape().rows);
  return out;
}

Matrix Landmarks::stack(const Batch& parts) {
  if (parts.empty()) throw ShapeError("Landmarks::stack: no components");
  const Eigen::Index rows = parts[0].rows();
  Matrix out(rows * static_cast<Eigen::Index>(parts.size()), parts[0].cols());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (shape_of(parts[i]) != shape_of(parts[0])) throw ShapeError("Landmarks::stack: ragged components");
    out.middleRows(static_cast<Eigen::Index>(i) * rows, rows) = parts[i];
  }
  return out;
}

double Landmarks::membership_residual(const Point& x) const {
  if (shape_of(x) != point_shape()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Matrix& c : split(x)) worst = std::max(worst, base_->membership_residual(c));
  return worst;
}

Point Landmarks::projection(const Point& x) const {
  Batch parts = split(x);
  for (Matrix& c : parts) c = base_->projection(c);
  return stack(parts);
}

double Landmarks::tangent_residual(const Point& base, const Matrix& v) const {
  const Batch bs = split(base);
  const Batch vs = split_tangent(v);
  double worst = 0.0;
  for (int i = 0; i < k_; ++i) worst = std::max(worst, base_->tangent_residual(bs[i], vs[i]));
  return worst;
}

Matrix Landmarks::to_tangent(const Point& base, const Matrix& v) const {
  const Batch bs = split(base);
  Batch vs = split_tangent(v);
  for (int i = 0; i < k_; ++i) vs[i] = base_->to_tangent(bs[i], vs[i]);
  return stack(vs);
}

Point Landmarks::random_point(Rng& rng) const {
  Batch parts(k_);
  for (Matrix& c : parts) c = base_->random_point(rng);
  return stack(parts);
}

LandmarksMetric::LandmarksMetric(std::shared_ptr<const RiemannianMetric> base, int k)
    : RiemannianMetric(std::make_shared<Landmarks>(base ? base->manifold_ptr() : nullptr, k)),
      base_(std::move(base)) {}

const Landmarks& LandmarksMetric::landmarks() const {
  return static_cast<const Landmarks&>(manifold());
}

Shape LandmarksMetric::tangent_shape() const {
  const Shape s = base_->tangent_shape();
  return {s.rows * landmarks().k(), s.cols};
}

int LandmarksMetric::tangent_dim() const { return landmarks().k() * base_->tangent_dim(); }

Batch LandmarksMetric::split_tangent(const Matrix& v) const {
  if (shape_of(v) != tangent_shape()) {
    throw ShapeError("Landmarks: tangent field has shape " + to_string(shape_of(v)) +
                     ", expected " + to_string(tangent_shape()));
  }
  const int k = landmarks().k();
  Batch out(k);
  for (int i = 0; i < k; ++i) out[i] = Landmarks::component(v, i, base_->tangent_shape().rows);
  return out;
}

double LandmarksMetric::tangent_residual(const Point& base, const Matrix& v) const {
  const Batch bs = landmarks().split(base);
  const Batch vs = split_tangent(v);
  double worst = 0.0;
  for (std::size_t i = 0; i < bs.size(); ++i) worst = std::max(worst, base_->tangent_residual(bs[i], vs[i]));
  return worst;
}

Matrix LandmarksMetric::to_tangent(const Point& base, const Matrix& v) const {
  const Batch bs = landmarks().split(base);
  Batch vs = split_tangent(v);
  for (std::size_t i = 0; i < bs.size(); ++i) vs[i] = base_->to_tangent(bs[i], vs[i]);
  return Landmarks::stack(vs);
}

Point LandmarksMetric::exp_impl(const Point& base, const Matrix& v) const {
  Batch bs = landmarks().split(base);
  const Batch vs = split_tangent(v);
  for (std::size_t i = 0; i < bs.size(); ++i) bs[i] = base_->exp(bs[i], vs[i]);
  return Landmarks::stack(bs);
}

Matrix LandmarksMetric::log_impl(const Point& base, const Point& target) const {
  const Batch bs = landmarks().split(base);
  const Batch ts = landmarks().split(target);
  Batch out(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) out[i] = base_->log(bs[i], ts[i]);
  return Landmarks::stack(out);
}

Matrix LandmarksMetric::transport_impl(const Matrix& v, const Point& base,
                                       const Matrix& direction) const {
  const Batch bs = landmarks().split(base);
  Batch vs = split_tangent(v);
  const Batch ds = split_tangent(direction);
  for (std::size_t i = 0; i < bs.size(); ++i) vs[i] = base_->parallel_transport(vs[i], bs[i], ds[i]);
  return Landmarks::stack(vs);
}

double LandmarksMetric::inner_product_impl(const Point& base, const Matrix& u, const Matrix& v) const {
  const Batch bs = landmarks().split(base);
  const Batch us = split_tangent(u);
  const Batch vs = split_tangent(v);
  double sum = 0.0;
  for (std::size_t i = 0; i < bs.size(); ++i) sum += base_->inner_product(bs[i], us[i], vs[i]);
  return sum;
}

double LandmarksMetric::dist_impl(const Point& a, const Point& b) const {
  const Batch as = landmarks().split(a);
  const Batch bs = landmarks().split(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) sum += base_->squared_dist(as[i], bs[i]);
  return std::sqrt(sum);
}

}  // namespace geo
