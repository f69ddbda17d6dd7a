#ifndef JSR_MATRIX_CORE_HPP
#define JSR_MATRIX_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "jsr/error.hpp"

namespace jsr {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Submultiplicative norms available for set norms and bounds.
enum class NormKind { Spectral, Frobenius };

inline constexpr Eigen::Index kDefaultKronCap = 4096;

/// Largest singular value, taken as the square root of the top eigenvalue
/// of a^H a.
template <typename Derived>
typename Derived::RealScalar op_norm(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.size() == 0) return Real(0);
  const Plain gram = a.adjoint() * a;
  const Eigen::SelfAdjointEigenSolver<Plain> es(gram, Eigen::EigenvaluesOnly);
  const Real top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, Real(0)));
}

template <typename Derived>
typename Derived::RealScalar matrix_norm(const Eigen::MatrixBase<Derived>& a, NormKind kind) {
  return kind == NormKind::Spectral ? op_norm(a) : a.norm();
}

/// Max modulus over the eigenvalues (Hessenberg reduction followed by
/// shifted QR on the complex Schur form).
///
/// `max_iterations == 0` selects the default cap of 100 * dim^2 QR sweeps.
/// Throws Error(NonConvergence) when the cap is hit.
template <typename Derived>
typename Derived::RealScalar spectral_radius(const Eigen::MatrixBase<Derived>& a,
                                             Eigen::Index max_iterations = 0) {
  using Real = typename Derived::RealScalar;
  using Complex = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols())
    throw Error(Errc::DimensionMismatch, "spectral_radius needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return Real(0);
  if (n == 1) return std::abs(std::complex<Real>(a(0, 0)));
  Eigen::ComplexEigenSolver<Complex> es;
  es.setMaxIterations(max_iterations > 0 ? max_iterations : 100 * n * n);
  es.compute(a.template cast<std::complex<Real>>(), false);
  if (es.info() != Eigen::Success)
    throw Error(Errc::NonConvergence,
                "QR iteration did not converge for a " + std::to_string(n) + "x" +
                    std::to_string(n) + " matrix");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Kronecker product; entry (i*rb + k, j*cb + l) = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    Eigen::Index max_dim = kDefaultKronCap) {
  if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim)
    throw Error(Errc::DimensionOverflow,
                "kron dimension " + std::to_string(a.rows() * b.rows()) + " exceeds cap " +
                    std::to_string(max_dim));
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

Matrix identity(Eigen::Index dim);
Matrix diag(std::initializer_list<Scalar> entries);
/// Row-major literal, e.g. `from_rows({{1, 1}, {0, 1}})`.
Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);
/// Unit matrix E_ij (0-based indices).
Matrix unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j);

}  // namespace jsr

#endif  // JSR_MATRIX_CORE_HPP
