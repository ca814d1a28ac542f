#include "geo/io/dataset.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace geo::io {
namespace {

[[noreturn]] void invalid(const std::string& message) { throw ContractError(message, "invalid_input"); }

double parse_number(std::string_view token, std::size_t line) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    invalid("CSV line " + std::to_string(line) + ": cannot parse '" + std::string(token) + "'");
  }
  return value;
}

Batch parse_csv(const Space& space, const std::string& text) {
  const Shape shape = space.manifold().point_shape();
  if (!shape.is_vector()) invalid("CSV input is only supported for vector-valued points");
  Batch out;
  std::istringstream in(text);
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> values;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = row.find(',', start);
      values.push_back(parse_number(std::string_view(row).substr(start, comma - start), line));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<Eigen::Index>(values.size()) != shape.rows) {
      throw ShapeError("CSV line " + std::to_string(line) + ": expected " + std::to_string(shape.rows) +
                       " values, got " + std::to_string(values.size()));
    }
    out.push_back(Eigen::Map<const Vector>(values.data(), shape.rows));
  }
  if (out.empty()) invalid("CSV input contains no points");
  return out;
}

}  // namespace

Dataset parse_dataset(const Space& space, const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) invalid("empty dataset");
  Dataset data;
  if (text[first] != '[' && text[first] != '{') {
    data.points = parse_csv(space, text);
    return data;
  }
  const json j = parse(text);
  const json* points = &j;
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key == "points") {
        points = &value;
      } else if (key == "weights") {
        if (!value.is_array()) invalid("'weights' must be an array");
        for (const json& w : value) {
          if (!w.is_number()) invalid("'weights' must contain numbers");
          data.weights.push_back(w.get<double>());
        }
      } else if (key == "labels") {
        if (!value.is_array()) invalid("'labels' must be an array");
        for (const json& l : value) {
          if (!l.is_number_integer()) invalid("'labels' must contain integers");
          data.labels.push_back(l.get<int>());
        }
      } else {
        invalid("unknown dataset field '" + key + "'");
      }
    }
    if (points == &j) invalid("dataset object needs a 'points' field");
  }
  if (!points->is_array() || points->empty()) invalid("dataset needs a non-empty array of points");
  if (!space.is_point_batch(*points)) invalid("dataset points do not have the expected nesting");
  for (const json& p : *points) data.points.push_back(space.point_from_json(p));
  if (!data.weights.empty() && data.weights.size() != data.points.size()) {
    throw ShapeError("dataset has " + std::to_string(data.weights.size()) + " weights for " +
                     std::to_string(data.points.size()) + " points");
  }
  if (!data.labels.empty() && data.labels.size() != data.points.size()) {
    throw ShapeError("dataset has " + std::to_string(data.labels.size()) + " labels for " +
                     std::to_string(data.points.size()) + " points");
  }
  return data;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot read '" + path + "'", "io_error");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> membership_residuals(const Space& space, const Batch& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point& x : points) out.push_back(space.manifold().membership_residual(x));
  return out;
}

void validate_points(const Space& space, const Batch& points, double tol) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = space.manifold().membership_residual(points[i]);
    if (!(r <= tol)) {
      throw ContractError("point " + std::to_string(i) + " does not belong to " + space.manifold().name() +
                              " (residual " + std::to_string(r) + ")",
                          "not_on_manifold");
    }
  }
}

}  // namespace geo::io
