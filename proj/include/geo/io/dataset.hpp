#pragma once

#include <string>
#include <vector>

#include "geo/io/spec.hpp"

namespace geo::io {

struct Dataset {
  Batch points;
  std::vector<double> weights;  // empty when absent
  std::vector<int> labels;      // empty when absent
};

/// Parses either a JSON array of points, a JSON object
/// {"points": [...], "weights": [...], "labels": [...]}, or CSV text with one
/// vector point per row. Shapes are checked; membership is not.
Dataset parse_dataset(const Space& space, const std::string& text);

/// Reads a file ("-" for standard input is handled by the caller).
std::string read_file(const std::string& path);

/// Membership residual of every point (infinite on shape mismatch).
std::vector<double> membership_residuals(const Space& space, const Batch& points);

/// Throws ContractError("not_on_manifold") naming the first offending index.
void validate_points(const Space& space, const Batch& points, double tol = tolerance::kMembership);

}  // namespace geo::io
