#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "eigenid/matrix.hpp"

namespace eigenid {

// Matrix file format: {"n": 2, "entries": [[[re, im], ...], ...]} with
// entries row-major, one [re, im] pair per element.
CMatrix read_matrix_json(std::istream& in);
CMatrix read_matrix_file(const std::string& path);
void write_matrix_json(std::ostream& out, const CMatrix& m);
void write_matrix_file(const std::string& path, const CMatrix& m);

std::uint64_t fnv1a64(std::string_view bytes);

// "fnv1a64:" + 16 hex digits over the canonical serialization, so the digest
// identifies the matrix content rather than the file's whitespace.
std::string matrix_digest(const CMatrix& m);

}  // namespace eigenid
