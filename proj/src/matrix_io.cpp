#include "specloc/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "specloc/errors.hpp"

namespace specloc {

namespace {

using nlohmann::json;

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + ": non-finite number");
  return x;
}

Complex complex_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where + ": expected [re, im]");
  return {finite_number(v[0], where), finite_number(v[1], where)};
}

std::size_t dimension(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    // parse_error for bad syntax, out_of_range for literals such as 1e999
    throw ParseError(origin + ": " + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be an object");
  const std::size_t rows = dimension(doc, "rows");
  const std::size_t cols = dimension(doc, "cols");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw ParseError("missing \"entries\" array");
  }
  const json& entries = doc.at("entries");
  if (entries.size() != rows * cols) {
    throw ParseError("\"entries\" holds " + std::to_string(entries.size()) +
                     " values, expected " + std::to_string(rows * cols));
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    values.push_back(complex_pair(entries[i], "entry " + std::to_string(i)));
  return ComplexMatrix(rows, cols, std::move(values));
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix parse_matrix(std::string_view text) {
  return matrix_from_json(parse_json(text, "matrix"));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  try {
    return matrix_from_json(parse_json(slurp(path), path.string()));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + what);
  }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << matrix_to_json(m).dump(2) << '\n';
}

CoefficientFile read_coefficient_file(const std::filesystem::path& path) {
  const json doc = parse_json(slurp(path), path.string());
  if (!doc.is_object() || !doc.contains("coeffs") || !doc.at("coeffs").is_array()) {
    throw ParseError(path.string() + ": missing \"coeffs\" grid");
  }
  const json& grid = doc.at("coeffs");
  const std::size_t side = grid.size();
  if (side == 0) throw ParseError(path.string() + ": empty \"coeffs\" grid");
  if (doc.contains("order")) {
    const json& o = doc.at("order");
    if (!o.is_number_integer() || o.get<long long>() + 1 != static_cast<long long>(side)) {
      throw ParseError(path.string() + ": \"order\" does not match the grid size");
    }
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(side * side);
  for (std::size_t j = 0; j < side; ++j) {
    const json& row = grid[j];
    if (!row.is_array() || row.size() != side) {
      throw ParseError(path.string() + ": \"coeffs\" must be a square grid");
    }
    for (std::size_t k = 0; k < side; ++k) {
      const std::string where = "coeffs[" + std::to_string(j) + "][" + std::to_string(k) + "]";
      coeffs.push_back(row[k].is_array() ? complex_pair(row[k], where)
                                         : Complex(finite_number(row[k], where)));
    }
  }
  int sign = 1;
  if (doc.contains("rhs_sign")) {
    const json& s = doc.at("rhs_sign");
    if (!s.is_number_integer()) throw ParseError(path.string() + ": \"rhs_sign\" must be +1 or -1");
    sign = static_cast<int>(s.get<long long>());
  }

  std::optional<LyapunovForm> form;
  try {
    form.emplace(static_cast<int>(side) - 1, std::move(coeffs), sign);
  } catch (const InvalidForm& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  std::optional<ComplexMatrix> b;
  if (doc.contains("B")) {
    if (!doc.at("B").is_string()) throw ParseError(path.string() + ": \"B\" must be a path");
    std::filesystem::path bp = doc.at("B").get<std::string>();
    if (bp.is_relative()) bp = path.parent_path() / bp;
    b = read_matrix_file(bp);
  }
  return {std::move(*form), std::move(b)};
}

}  // namespace specloc
