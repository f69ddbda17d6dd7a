#include "jsr/matrix_core.hpp"

namespace jsr {

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix diag(std::initializer_list<Scalar> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (const Scalar& e : entries) {
    m(i, i) = e;
    ++i;
  }
  return m;
}

Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw Error(Errc::ShapeError, "from_rows: matrix literal is not square");
    Eigen::Index j = 0;
    for (const Scalar& e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

Matrix unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

}  // namespace jsr
