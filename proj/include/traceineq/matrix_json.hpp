#pragma once

#include <string>

#include <json.hpp>

#include "traceineq/linalg.hpp"

namespace traceineq {

/**
 * Serializes a matrix to the interchange schema
 *   {"dim": n, "re": [[...]], "im": [[...]]}
 * with row-major entry lists.
 */
nlohmann::json matrix_to_json(const Matrix& m);

/** Parses the interchange schema; rejects shape mismatches and non-finite entries. */
Matrix matrix_from_json(const nlohmann::json& j);

/** Reads one matrix from a file containing the interchange schema. */
Matrix read_matrix_file(const std::string& path);

}  // namespace traceineq
