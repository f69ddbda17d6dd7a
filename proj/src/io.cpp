#include "jsr/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/sha.h>

#include "json.hpp"

namespace jsr {
namespace {

using nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void shape_error(std::size_t index, const std::string& what) {
  throw Error(Errc::ShapeError, "matrix " + std::to_string(index) + ": " + what);
}

void read_part(const json& rows, Eigen::Index dim, std::size_t index, const char* part, Matrix& m, bool imaginary) {
  if (!rows.is_array()) shape_error(index, std::string("\"") + part + "\" must be an array of rows");
  if (static_cast<Eigen::Index>(rows.size()) != dim)
    shape_error(index, std::string("\"") + part + "\" has " + std::to_string(rows.size()) + " rows, expected " +
                           std::to_string(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      shape_error(index, std::string("row ") + std::to_string(i) + " of \"" + part + "\" does not have " +
                             std::to_string(dim) + " entries");
    for (Eigen::Index j = 0; j < dim; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) shape_error(index, std::string("non-numeric entry in \"") + part + "\"");
      const double x = v.get<double>();
      if (imaginary)
        m(i, j).imag(x);
      else
        m(i, j).real(x);
    }
  }
}

}  // namespace

MatrixSet parse_matrix_set(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::ParseError, "top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    throw Error(Errc::ParseError, "\"dim\" must be a positive integer");
  if (!doc.contains("matrices") || !doc["matrices"].is_array() || doc["matrices"].empty())
    throw Error(Errc::ParseError, "\"matrices\" must be a nonempty array");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw Error(Errc::ParseError, "\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }

  const auto dim = static_cast<Eigen::Index>(doc["dim"].get<long long>());
  std::vector<Matrix> generators;
  const json& mats = doc["matrices"];
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const json& entry = mats[k];
    if (!entry.is_object() || !entry.contains("re")) shape_error(k, "expected an object with \"re\"");
    Matrix m = Matrix::Zero(dim, dim);
    read_part(entry["re"], dim, k, "re", m, false);
    if (entry.contains("im")) read_part(entry["im"], dim, k, "im", m, true);
    generators.push_back(std::move(m));
  }
  return MatrixSet(std::move(generators), std::move(name));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MatrixSet load_matrix_set(const std::string& path) { return parse_matrix_set(read_file(path)); }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  std::ostringstream os;
  for (unsigned char c : digest) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
  return os.str();
}

}  // namespace jsr
