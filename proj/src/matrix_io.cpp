#include "semirad/matrix_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace semirad {

using nlohmann::ordered_json;

ComplexMatrix parse_matrix_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaMismatchError(std::string("matrix parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("data"))
    throw SchemaMismatchError("matrix parse: expected fields rows, cols, data");
  if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer())
    throw SchemaMismatchError("matrix parse: rows/cols must be integers");
  const long rows = doc["rows"].get<long>();
  const long cols = doc["cols"].get<long>();
  if (rows <= 0 || cols <= 0)
    throw SchemaMismatchError("matrix parse: rows and cols must be positive");
  const auto& data = doc["data"];
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols))
    throw SchemaMismatchError("matrix parse: data length != rows*cols");
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j, ++k) {
      const auto& e = data[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw SchemaMismatchError("matrix parse: data entries must be [re, im] pairs");
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!all_finite(m)) throw NonFiniteError("matrix parse: non-finite entry");
  return m;
}

std::string format_matrix_json(const ComplexMatrix& m) {
  ordered_json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  doc["data"] = std::move(data);
  return doc.dump(2);
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix_json(ss.str());
  } catch (const Error& e) {
    throw SchemaMismatchError(path + ": " + e.what());
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open matrix file for writing: " + path);
  out << format_matrix_json(m) << "\n";
}

}  // namespace semirad
