#include "geo/io/spec.hpp"

#include <algorithm>
#include <map>

#include "geo/spaces/curves.hpp"
#include "geo/spaces/euclidean.hpp"
#include "geo/spaces/general_linear.hpp"
#include "geo/spaces/grassmann.hpp"
#include "geo/spaces/hyperbolic.hpp"
#include "geo/spaces/hypersphere.hpp"
#include "geo/spaces/landmarks.hpp"
#include "geo/spaces/minkowski.hpp"
#include "geo/spaces/spd.hpp"
#include "geo/spaces/special_euclidean.hpp"
#include "geo/spaces/special_orthogonal.hpp"
#include "geo/spaces/stiefel.hpp"

namespace geo::io {
namespace {

[[noreturn]] void bad_spec(const std::string& message) {
  throw ContractError("manifold spec: " + message, "invalid_spec");
}

struct Entry {
  std::vector<std::string> params;   // required integer parameters
  std::vector<std::string> metrics;  // first is the default
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> entries = {
      {"euclidean", {{"n"}, {"euclidean"}}},
      {"minkowski", {{"n"}, {"minkowski"}}},
      {"hypersphere", {{"n"}, {"hypersphere"}}},
      {"hyperbolic", {{"n"}, {"hyperbolic"}}},
      {"spd", {{"n"}, {"affine-invariant", "log-euclidean"}}},
      {"so", {{"n"}, {"bi-invariant"}}},
      {"se", {{"n"}, {"left-invariant", "right-invariant"}}},
      {"gl", {{"n"}, {"group"}}},
      {"stiefel", {{"n", "p"}, {"canonical"}}},
      {"grassmann", {{"n", "p"}, {"canonical"}}},
      {"curves", {{"k", "d"}, {"l2", "srv"}}},
      {"landmarks", {{"k"}, {"product"}}},
  };
  return entries;
}

int positive_int(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 100000) {
    bad_spec("'" + key + "' must be a positive integer");
  }
  return j.get<int>();
}

std::optional<int>& param(ManifoldSpec& spec, const std::string& key) {
  if (key == "n") return spec.n;
  if (key == "p") return spec.p;
  if (key == "k") return spec.k;
  return spec.d;
}

const std::optional<int>& param(const ManifoldSpec& spec, const std::string& key) {
  return param(const_cast<ManifoldSpec&>(spec), key);
}

}  // namespace

const std::vector<std::string>& manifold_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, entry] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

ManifoldSpec parse_manifold_spec(const json& j) {
  ManifoldSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key == "name") {
        if (!value.is_string()) bad_spec("'name' must be a string");
        spec.name = value.get<std::string>();
      } else if (key == "n" || key == "p" || key == "k" || key == "d") {
        param(spec, key) = positive_int(value, key);
      } else if (key == "metric") {
        if (value.is_string()) {
          spec.metric = value.get<std::string>();
        } else if (value.is_object()) {
          for (const auto& [mkey, mvalue] : value.items()) {
            if (mkey == "family") {
              if (!mvalue.is_string()) bad_spec("'metric.family' must be a string");
              spec.metric = mvalue.get<std::string>();
            } else if (mkey == "inner_matrix") {
              spec.inner_matrix = matrix_from_json(mvalue);
            } else {
              bad_spec("unknown metric field '" + mkey + "'");
            }
          }
        } else {
          bad_spec("'metric' must be a string or an object");
        }
      } else if (key == "representation") {
        if (!value.is_string()) bad_spec("'representation' must be a string");
        spec.representation = value.get<std::string>();
      } else if (key == "base") {
        spec.base = std::make_shared<ManifoldSpec>(parse_manifold_spec(value));
      } else {
        bad_spec("unknown field '" + key + "'");
      }
    }
  } else {
    bad_spec("expected an object or a name");
  }

  const auto it = registry().find(spec.name);
  if (it == registry().end()) bad_spec("unknown manifold '" + spec.name + "'");
  const Entry& entry = it->second;
  for (const std::string key : {"n", "p", "k", "d"}) {
    const bool wanted = std::find(entry.params.begin(), entry.params.end(), key) != entry.params.end();
    if (wanted && !param(spec, key)) bad_spec("'" + spec.name + "' requires '" + key + "'");
    if (!wanted && param(spec, key)) bad_spec("'" + spec.name + "' does not take '" + key + "'");
  }
  if ((spec.name == "so" || spec.name == "se") && *spec.n < 2) bad_spec("'" + spec.name + "' requires n >= 2");
  if ((spec.name == "stiefel" || spec.name == "grassmann") && *spec.p > *spec.n) {
    bad_spec("'" + spec.name + "' requires p <= n");
  }
  if (spec.name == "curves" && *spec.k < 2) bad_spec("'curves' requires k >= 2");
  if (spec.metric.empty()) spec.metric = entry.metrics.front();
  if (std::find(entry.metrics.begin(), entry.metrics.end(), spec.metric) == entry.metrics.end()) {
    bad_spec("unknown metric '" + spec.metric + "' for '" + spec.name + "'");
  }
  if (spec.inner_matrix && spec.name != "se") bad_spec("'inner_matrix' applies to 'se' only");
  if (spec.name == "hyperbolic") {
    if (spec.representation.empty()) spec.representation = "hyperboloid";
    if (spec.representation == "poincare_ball" || spec.representation == "poincare") spec.representation = "ball";
    if (spec.representation != "hyperboloid" && spec.representation != "ball") {
      bad_spec("representation must be 'hyperboloid' or 'ball'");
    }
  } else if (spec.name == "hypersphere") {
    if (spec.representation.empty()) spec.representation = "extrinsic";
    if (spec.representation != "extrinsic") bad_spec("hypersphere representation must be 'extrinsic'");
  } else if (!spec.representation.empty()) {
    bad_spec("'representation' applies to 'hyperbolic' and 'hypersphere' only");
  }
  if ((spec.name == "landmarks") != static_cast<bool>(spec.base)) {
    bad_spec(spec.name == "landmarks" ? "'landmarks' requires 'base'" : "'base' applies to 'landmarks' only");
  }
  return spec;
}

json to_json(const ManifoldSpec& spec) {
  json out = {{"name", spec.name}};
  for (const std::string key : {"n", "p", "k", "d"}) {
    if (param(spec, key)) out[key] = *param(spec, key);
  }
  if (spec.inner_matrix) {
    out["metric"] = {{"family", spec.metric}, {"inner_matrix", matrix_to_json(*spec.inner_matrix)}};
  } else {
    out["metric"] = spec.metric;
  }
  if (!spec.representation.empty()) out["representation"] = spec.representation;
  if (spec.base) out["base"] = to_json(*spec.base);
  return out;
}

Space::Space(const ManifoldSpec& spec) : spec_(spec) {
  const std::string& name = spec.name;
  const int n = spec.n.value_or(0);
  if (name == "euclidean") {
    metric_ = std::make_shared<EuclideanMetric>(n);
  } else if (name == "minkowski") {
    pseudo_ = std::make_shared<MinkowskiMetric>(n);
  } else if (name == "hypersphere") {
    metric_ = std::make_shared<HypersphereMetric>(n);
  } else if (name == "hyperbolic") {
    if (spec.representation == "ball") {
      metric_ = std::make_shared<PoincareBallMetric>(n);
    } else {
      metric_ = std::make_shared<HyperboloidMetric>(n);
    }
  } else if (name == "spd") {
    if (spec.metric == "log-euclidean") {
      metric_ = std::make_shared<SPDLogEuclideanMetric>(n);
    } else {
      metric_ = std::make_shared<SPDAffineMetric>(n);
    }
  } else if (name == "so") {
    metric_ = std::make_shared<SOBiInvariantMetric>(n);
  } else if (name == "se") {
    layout_ = Layout::kRigid;
    InvariantMetricSpec ms;
    ms.side = spec.metric == "right-invariant" ? InvariantSide::kRight : InvariantSide::kLeft;
    if (spec.inner_matrix) ms.inner_matrix_at_identity = *spec.inner_matrix;
    metric_ = std::make_shared<SEInvariantMetric>(n, ms);
  } else if (name == "gl") {
    connection_ = std::make_shared<GLGroupConnection>(n);
  } else if (name == "stiefel") {
    metric_ = std::make_shared<StiefelCanonicalMetric>(n, *spec.p);
  } else if (name == "grassmann") {
    metric_ = std::make_shared<GrassmannMetric>(n, *spec.p);
  } else if (name == "curves") {
    if (spec.metric == "srv") {
      metric_ = std::make_shared<SRVCurvesMetric>(*spec.k, *spec.d);
    } else {
      metric_ = std::make_shared<L2CurvesMetric>(*spec.k, *spec.d);
    }
  } else if (name == "landmarks") {
    layout_ = Layout::kProduct;
    base_ = std::make_shared<Space>(*spec.base);
    if (!base_->metric_) bad_spec("landmarks need a base manifold with a Riemannian metric");
    metric_ = std::make_shared<LandmarksMetric>(base_->metric_, *spec.k);
  } else {
    bad_spec("unknown manifold '" + name + "'");
  }
  if (metric_) pseudo_ = metric_;
  if (pseudo_) connection_ = pseudo_;
}

const RiemannianMetric& Space::require_metric(const char* op) const {
  if (!metric_) {
    throw ContractError(std::string(op) + ": '" + spec_.name + "' has no Riemannian metric", "no_metric");
  }
  return *metric_;
}

namespace {

bool looks_like_plain(const json& j, const Shape& shape) {
  return array_depth(j) == (shape.is_vector() ? 1 : 2);
}

Matrix rigid_from_json(const json& j, int n, bool tangent) {
  if (!j.is_object()) return from_json(j, {n + 1, n + 1});
  if (j.size() != 2 || !j.contains("rotation") || !j.contains("translation")) {
    throw ContractError("expected {\"rotation\": ..., \"translation\": ...}", "invalid_input");
  }
  const Matrix r = from_json(j.at("rotation"), {n, n});
  const Vector t = from_json(j.at("translation"), {n, 1});
  Matrix out = Matrix::Zero(n + 1, n + 1);
  out.topLeftCorner(n, n) = r;
  out.col(n).head(n) = t;
  if (!tangent) out(n, n) = 1.0;
  return out;
}

}  // namespace

Point Space::point_from_json(const json& j) const {
  switch (layout_) {
    case Layout::kRigid:
      return rigid_from_json(j, *spec_.n, false);
    case Layout::kProduct: {
      if (!j.is_array() || j.size() != static_cast<std::size_t>(*spec_.k)) {
        throw ShapeError("expected an array of " + std::to_string(*spec_.k) + " landmarks");
      }
      Batch parts;
      for (const json& c : j) parts.push_back(base_->point_from_json(c));
      return Landmarks::stack(parts);
    }
    case Layout::kPlain:
      break;
  }
  return from_json(j, manifold().point_shape());
}

Matrix Space::tangent_from_json(const json& j) const {
  switch (layout_) {
    case Layout::kRigid:
      return rigid_from_json(j, *spec_.n, true);
    case Layout::kProduct: {
      if (!j.is_array() || j.size() != static_cast<std::size_t>(*spec_.k)) {
        throw ShapeError("expected an array of " + std::to_string(*spec_.k) + " tangent components");
      }
      Batch parts;
      for (const json& c : j) parts.push_back(base_->tangent_from_json(c));
      return Landmarks::stack(parts);
    }
    case Layout::kPlain:
      break;
  }
  return from_json(j, connection_->tangent_shape());
}

json Space::point_to_json(const Point& x) const {
  if (layout_ == Layout::kProduct) {
    json out = json::array();
    const Eigen::Index rows = base_->manifold().point_shape().rows;
    for (int i = 0; i < *spec_.k; ++i) out.push_back(base_->point_to_json(Landmarks::component(x, i, rows)));
    return out;
  }
  return to_json(x);
}

json Space::tangent_to_json(const Matrix& v) const {
  if (layout_ == Layout::kProduct) {
    json out = json::array();
    const Eigen::Index rows = base_->connection().tangent_shape().rows;
    for (int i = 0; i < *spec_.k; ++i) out.push_back(base_->tangent_to_json(Landmarks::component(v, i, rows)));
    return out;
  }
  return to_json(v);
}

bool Space::is_point_batch(const json& j) const {
  if (!j.is_array() || j.empty()) return false;
  const json& first = j[0];
  switch (layout_) {
    case Layout::kRigid:
      return first.is_object() || array_depth(first) == 2;
    case Layout::kProduct:
      return first.is_array() && !first.empty() && base_->is_point_batch(first);
    case Layout::kPlain:
      break;
  }
  return looks_like_plain(first, manifold().point_shape());
}

bool Space::is_tangent_batch(const json& j) const {
  if (!j.is_array() || j.empty()) return false;
  const json& first = j[0];
  switch (layout_) {
    case Layout::kRigid:
      return first.is_object() || array_depth(first) == 2;
    case Layout::kProduct:
      return first.is_array() && !first.empty() && base_->is_tangent_batch(first);
    case Layout::kPlain:
      break;
  }
  return looks_like_plain(first, connection_->tangent_shape());
}

Batch Space::points_from_json(const json& j) const {
  if (!is_point_batch(j)) return {point_from_json(j)};
  Batch out;
  for (const json& x : j) out.push_back(point_from_json(x));
  return out;
}

Batch Space::tangents_from_json(const json& j) const {
  if (!is_tangent_batch(j)) return {tangent_from_json(j)};
  Batch out;
  for (const json& x : j) out.push_back(tangent_from_json(x));
  return out;
}

}  // namespace geo::io
