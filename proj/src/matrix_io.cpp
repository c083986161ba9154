#include "eigenid/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace eigenid {

using nlohmann::json;

CMatrix read_matrix_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw ParseError("matrix file: expected an object with \"n\" and \"entries\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw ParseError("matrix file: \"n\" must be a positive integer");
  const std::size_t n = j["n"].get<std::size_t>();
  const json& rows = j["entries"];
  if (!rows.is_array() || rows.size() != n)
    throw ParseError("matrix file: \"entries\" must hold n rows");
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n)
      throw ParseError("matrix file: each row must hold n entries");
    for (std::size_t k = 0; k < n; ++k) {
      const json& cell = row[k];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        throw ParseError("matrix file: each entry must be a [re, im] number pair");
      m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  if (!all_finite(m)) throw ParseError("matrix file: non-finite entry");
  return m;
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrix_json(in);
}

void write_matrix_json(std::ostream& out, const CMatrix& m) {
  if (!m.is_square()) throw NotSquare("matrix file: only square matrices are stored");
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  const json j{{"n", m.rows()}, {"entries", std::move(rows)}};
  out << j.dump(2) << '\n';
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_matrix_json(out, m);
  if (!out) throw ParseError("failed writing " + path);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string matrix_digest(const CMatrix& m) {
  std::ostringstream canonical;
  write_matrix_json(canonical, m);
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16)
     << fnv1a64(canonical.str());
  return os.str();
}

}  // namespace eigenid
