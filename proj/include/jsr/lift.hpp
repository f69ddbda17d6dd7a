#ifndef JSR_LIFT_HPP
#define JSR_LIFT_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "jsr/bounds.hpp"

namespace jsr {

/// vec() stacks columns: vec(x)[i + j*d] = x(i, j). Every lift in this
/// module uses this convention, under which vec(a x b) = (b^T kron a) vec(x).
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index dim);

/// The operator x -> a x b on d x d matrices, written as a d^2 x d^2 matrix.
class LiftedOperator {
 public:
  /// `tag` records which generator pair (a, b) produced the operator, if any.
  LiftedOperator(const Matrix& a, const Matrix& b, std::optional<std::pair<std::size_t, std::size_t>> tag = {});

  Eigen::Index source_dim() const noexcept { return source_dim_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& tag() const noexcept { return tag_; }

  Matrix apply(const Matrix& x) const { return unvec(matrix_ * vec(x), source_dim_); }

 private:
  Eigen::Index source_dim_;
  Matrix matrix_;
  std::optional<std::pair<std::size_t, std::size_t>> tag_;
};

/// L_a R_b. Throws DimensionMismatch, or DimensionOverflow past `max_dim`
/// for the lifted dimension.
LiftedOperator lift_LR(const Matrix& a, const Matrix& b, Eigen::Index max_dim = kDefaultKronCap);

/// {L_a R_b : a, b in M}, ordered by (index of a, index of b).
MatrixSet lift_set(const MatrixSet& set, Eigen::Index max_dim = kDefaultKronCap);

struct PassIdentityOptions {
  int depth = 4;
  /// Budget for each of the two refine runs.
  std::uint64_t budget = 20'000;
  double width = 1e-3;
  double rel_tol = 1e-7;
  unsigned workers = 0;
};

struct PassIdentityReport {
  double rho_sq_gap = 0.0;
  double r_exact_gap = 0.0;
  BoundsReport set_bounds;
  BoundsReport lifted_bounds;
  bool pass = false;
};

/// Compares rho(L_M R_M) with rho(M)^2 through refine intervals, and
/// r_k(L_M R_M) with r_k(M)^2 for every k up to `depth` by enumeration.
PassIdentityReport check_pass_identities(const MatrixSet& set, const PassIdentityOptions& options = {});

/// max of ||W_ba - L_b W_a R_b||_F and ||W_ba - R_a W_b L_a||_F, W_x = L_x R_x.
double check_w_product_identity(const Matrix& a, const Matrix& b);

/// Joint spectral radius of the lifted set taken modulo compact operators.
/// Every operator on a finite-dimensional space is compact, so this is zero.
constexpr double rho_chi(const MatrixSet&) noexcept { return 0.0; }

}  // namespace jsr

#endif  // JSR_LIFT_HPP
