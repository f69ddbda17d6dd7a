#ifndef JSR_IO_HPP
#define JSR_IO_HPP

#include <string>
#include <string_view>

#include "jsr/set_dynamics.hpp"

namespace jsr {

/// Reads a matrix set document:
///
///   {"name": "optional", "dim": 2,
///    "matrices": [{"re": [[1, 1], [0, 1]], "im": [[0, 0], [0, 0]]}, ...]}
///
/// "im" may be omitted and then defaults to zero. Syntax errors raise
/// ParseError with a line and column; a matrix of the wrong shape raises
/// ShapeError naming its index.
MatrixSet parse_matrix_set(std::string_view text);

/// Reads and parses a file; IoError when it cannot be opened.
MatrixSet load_matrix_set(const std::string& path);

std::string read_file(const std::string& path);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

}  // namespace jsr

#endif  // JSR_IO_HPP
