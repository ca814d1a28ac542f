#pragma once

// JSON conversion of dense matrices. Column vectors are flat arrays, other
// matrices are arrays of rows.

#include <json.hpp>

#include "geo/types.hpp"

namespace geo::io {

using json = nlohmann::json;

/// Depth of nested arrays along the first elements: 0 for scalars/objects.
int array_depth(const json& j);

/// Flat array of numbers. Throws ContractError("invalid_input") otherwise.
Vector vector_from_json(const json& j);
json vector_to_json(const Vector& v);

/// Rectangular array of rows of numbers.
Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);

/// Matrix of the given shape; vectors (cols == 1) are read as flat arrays.
Matrix from_json(const json& j, const Shape& shape);
json to_json(const Matrix& m);

/// Parses JSON text, mapping syntax errors to ContractError("invalid_json").
json parse(const std::string& text);

}  // namespace geo::io
