#pragma once

// Wire format for selecting a manifold and metric, e.g.
//   {"name": "hypersphere", "n": 2}
//   {"name": "spd", "n": 3, "metric": "log-euclidean"}
//   {"name": "se", "n": 3, "metric": {"family": "right-invariant", "inner_matrix": [[...]]}}
//   {"name": "landmarks", "k": 4, "base": {"name": "hypersphere", "n": 2}}

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geo/connection.hpp"
#include "geo/io/json.hpp"

namespace geo::io {

struct ManifoldSpec {
  std::string name;
  std::optional<int> n, p, k, d;
  /// Metric family; empty selects the default.
  std::string metric;
  std::optional<Matrix> inner_matrix;
  /// Point representation: "hyperboloid" (default) or "ball" for hyperbolic
  /// space, "extrinsic" for the sphere.
  std::string representation;
  std::shared_ptr<ManifoldSpec> base;
};

/// Accepts a JSON object or a bare manifold name. Unknown fields and names
/// raise ContractError("invalid_spec").
ManifoldSpec parse_manifold_spec(const json& j);
json to_json(const ManifoldSpec& spec);

/// Names accepted in the "name" field.
const std::vector<std::string>& manifold_names();

/// A resolved manifold and metric with its point and tangent codecs.
class Space {
 public:
  explicit Space(const ManifoldSpec& spec);

  const ManifoldSpec& spec() const { return spec_; }
  const Manifold& manifold() const { return connection_->manifold(); }
  const Connection& connection() const { return *connection_; }
  /// Null when the connection has no inner product (GL(n)).
  const PseudoRiemannianMetric* pseudo_metric() const { return pseudo_.get(); }
  /// Null when there is no positive-definite metric (GL(n), Minkowski).
  const RiemannianMetric* metric() const { return metric_.get(); }
  std::shared_ptr<const Connection> connection_ptr() const { return connection_; }
  std::shared_ptr<const RiemannianMetric> metric_ptr() const { return metric_; }

  /// Requires a Riemannian metric; throws ContractError("no_metric").
  const RiemannianMetric& require_metric(const char* op) const;

  Point point_from_json(const json& j) const;
  json point_to_json(const Point& x) const;
  Matrix tangent_from_json(const json& j) const;
  json tangent_to_json(const Matrix& v) const;

  /// True when j is an array of serialized points rather than one point.
  bool is_point_batch(const json& j) const;
  bool is_tangent_batch(const json& j) const;
  /// Single points become a batch of one.
  Batch points_from_json(const json& j) const;
  Batch tangents_from_json(const json& j) const;

 private:
  enum class Layout { kPlain, kRigid, kProduct };

  ManifoldSpec spec_;
  std::shared_ptr<const Connection> connection_;
  std::shared_ptr<const PseudoRiemannianMetric> pseudo_;
  std::shared_ptr<const RiemannianMetric> metric_;
  Layout layout_ = Layout::kPlain;
  std::shared_ptr<const Space> base_;  // landmarks only
};

}  // namespace geo::io
