#include "geo/io/json.hpp"

#include "geo/errors.hpp"

namespace geo::io {
namespace {

[[noreturn]] void invalid(const std::string& message) { throw ContractError(message, "invalid_input"); }

double number(const json& j) {
  if (!j.is_number()) invalid("expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

}  // namespace

int array_depth(const json& j) {
  int depth = 0;
  const json* cur = &j;
  while (cur->is_array()) {
    ++depth;
    if (cur->empty()) break;
    cur = &(*cur)[0];
  }
  return depth;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) invalid("expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i]);
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    invalid("expected a non-empty array of rows");
  }
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) invalid("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c]);
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix from_json(const json& j, const Shape& shape) {
  const Matrix m = shape.is_vector() ? Matrix(vector_from_json(j)) : matrix_from_json(j);
  if (shape_of(m) != shape) {
    throw ShapeError("expected shape " + to_string(shape) + ", got " + to_string(shape_of(m)));
  }
  return m;
}

json to_json(const Matrix& m) {
  return m.cols() == 1 ? vector_to_json(m.col(0)) : matrix_to_json(m);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("invalid JSON: ") + e.what(), "invalid_json");
  }
}

}  // namespace geo::io
