#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "specloc/complex_matrix.hpp"
#include "specloc/lyapunov.hpp"

namespace specloc {

// Matrix files are JSON objects
//   {"rows": m, "cols": n, "entries": [[re, im], ...]}
// with entries in row-major order. Every reader throws ParseError.

ComplexMatrix matrix_from_json(const nlohmann::json& doc);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

/// {"coeffs": [[a00, a01, ...], [a10, ...], ...], "order": N, "rhs_sign": 1, "B": "b.json"}
/// Coefficients are numbers or [re, im] pairs; "order", "rhs_sign" and "B"
/// are optional. A relative "B" path is resolved against the file's directory.
struct CoefficientFile {
  LyapunovForm form;
  std::optional<ComplexMatrix> b;
};

CoefficientFile read_coefficient_file(const std::filesystem::path& path);

}  // namespace specloc
