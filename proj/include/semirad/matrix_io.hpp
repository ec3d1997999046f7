#pragma once

#include <string>

#include "semirad/types.hpp"

namespace semirad {

// Repo-wide matrix file format: a JSON document
//
//   { "rows": 2, "cols": 2, "data": [[re, im], [re, im], ...] }
//
// with `data` row-major.  Parsers reject mismatched lengths, malformed
// pairs and non-finite entries.

ComplexMatrix parse_matrix_json(const std::string& text);
std::string format_matrix_json(const ComplexMatrix& m);

ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

}  // namespace semirad
