#ifndef JSR_ALGEBRA_HPP
#define JSR_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <vector>

#include "jsr/bounds.hpp"

namespace jsr {

/// A finite-dimensional algebra of d x d complex matrices.
///
/// The stored basis is orthonormal for the Frobenius inner product, so an
/// element's coefficient vector is the Frobenius projection of the matrix
/// and coefficient inner products agree with matrix inner products. Copies
/// share the same immutable data.
class FDAlgebra {
 public:
  /// Spans `elements`; throws InvalidArgument if they are linearly dependent
  /// (relative singular value below 1e-9) or their span is not closed under
  /// multiplication (residual above 1e-9).
  FDAlgebra(Eigen::Index ambient_dim, const std::vector<Matrix>& elements);

  Eigen::Index ambient_dim() const noexcept;
  Eigen::Index dim() const noexcept;
  const std::vector<Matrix>& basis() const noexcept;

  /// b_i b_j = sum_k c(i, j, k) b_k.
  Scalar structure_constant(Eigen::Index i, Eigen::Index j, Eigen::Index k) const;

  /// Coefficients of L_{b_i}: column j holds the coordinates of b_i b_j.
  const Matrix& left_mult(Eigen::Index i) const;
  /// Coefficients of R_{b_j}: column i holds the coordinates of b_i b_j.
  const Matrix& right_mult(Eigen::Index j) const;

  /// Left-multiplication operator of an element, in coordinates.
  Matrix left_operator(const Vector& x) const;
  Vector multiply(const Vector& x, const Vector& y) const;

  Vector coordinates(const Matrix& m) const;
  Matrix element(const Vector& coords) const;
  /// Frobenius distance from `m` to the algebra.
  double distance(const Matrix& m) const;

  /// Coordinates of the two-sided unit, if the algebra has one.
  const std::optional<Vector>& unit() const noexcept;
  bool unital() const noexcept { return unit().has_value(); }

  bool same_as(const FDAlgebra& other) const noexcept { return impl_ == other.impl_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// A two-sided ideal, stored as an orthonormal set of coefficient vectors.
class Ideal {
 public:
  /// Spans `generators` (coefficient vectors, possibly dependent). Throws
  /// NotAnIdeal if the span is not closed under left and right multiplication
  /// by the parent (residual above 1e-9).
  Ideal(FDAlgebra parent, const std::vector<Vector>& generators);

  static Ideal zero(const FDAlgebra& parent);
  static Ideal whole(const FDAlgebra& parent);
  static Ideal from_matrices(const FDAlgebra& parent, const std::vector<Matrix>& elements);
  /// The smallest ideal of the unitization containing `x`, i.e. span(A^1 x A^1).
  static Ideal generated_by(const FDAlgebra& parent, const Vector& x);

  const FDAlgebra& parent() const noexcept { return parent_; }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  /// n x dim matrix with orthonormal columns.
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<Matrix> ambient_basis() const;

  bool contains(const Vector& x, double tol = 1e-8) const;
  bool contains(const Ideal& other, double tol = 1e-8) const;

  /// span{u v : u in this, v in other}.
  Ideal product(const Ideal& other) const;

  /// Smallest k with I^k = 0, or nothing if the ideal is not nilpotent.
  std::optional<int> nilpotency_degree() const;

 private:
  Ideal(FDAlgebra parent, Matrix orthonormal_basis);

  FDAlgebra parent_;
  Matrix basis_;
};

/// A / J, represented faithfully through the left regular representation of
/// its unitization on the orthogonal complement of J. When A already has a
/// unit no extra dimension is added.
class QuotientAlgebra {
 public:
  QuotientAlgebra(FDAlgebra parent, Ideal ideal);

  const FDAlgebra& parent() const noexcept { return parent_; }
  const Ideal& ideal() const noexcept { return ideal_; }
  Eigen::Index dim() const noexcept { return complement_.cols(); }
  Eigen::Index rep_dim() const noexcept;

  Matrix rep(const Vector& coords) const;
  /// Throws InvalidArgument if `m` is not an element of the parent.
  Matrix rep(const Matrix& m) const;

  /// The image q(M); empty when the representation is zero-dimensional.
  std::optional<MatrixSet> image(const MatrixSet& set) const;

  /// The quotient as a matrix algebra in its own right.
  FDAlgebra as_algebra() const;

 private:
  FDAlgebra parent_;
  Ideal ideal_;
  Matrix complement_;
};

/// A(M): the smallest subalgebra (not necessarily unital) containing M.
/// Throws DimensionCap once the span would exceed `max_dim`; `max_dim <= 0`
/// means d^2.
FDAlgebra generated_subalgebra(const MatrixSet& set, Eigen::Index max_dim = 0);

/// Rad(A) = {x in A : trace(x y) = 0 for every y in A}. Throws IllConditioned
/// when a singular value of the trace Gram matrix lies within a factor
/// sqrt(1e3) of the cutoff 1e-8 * ||G||.
Ideal jacobson_radical(const FDAlgebra& algebra);

/// Every finite-dimensional algebra is bicompact, so the hypocompact radical
/// is the whole algebra.
inline Ideal hypocompact_radical(const FDAlgebra& algebra) { return Ideal::whole(algebra); }

QuotientAlgebra quotient(const FDAlgebra& algebra, const Ideal& ideal);

/// 0, then Rad^k down to Rad, then A (duplicates removed).
std::vector<Ideal> radical_power_chain(const FDAlgebra& algebra);

struct InessentialOptions {
  double width = 1e-3;
  std::uint64_t budget = 100'000;
  unsigned workers = 0;
  double widen_rel = 1e-6;
};

struct InessentialReport {
  BoundsReport full;
  BoundsReport quotient;
  Eigen::Index algebra_dim = 0;
  Eigen::Index radical_dim = 0;
  Eigen::Index rep_dim = 0;
  double gap = 0.0;
  bool pass = false;
};

/// rho(M) against rho(q(M)) for the quotient by the radical of A(M).
InessentialReport check_inessential(const MatrixSet& set, const InessentialOptions& options = {});

struct RcqEvidence {
  std::optional<int> nil_degree;
  std::optional<ProductWord> witness;
  double witness_rho = 0.0;
};

struct RcqVerdict {
  bool member = false;
  RcqEvidence evidence;
};

/// Tests whether the ideal of A^1 generated by x is nilpotent. For a
/// non-member, searches words of length <= depth over {x b_i} for a product
/// with spectral radius above 1e-8.
RcqVerdict rcq_membership(const FDAlgebra& algebra, const Vector& x, int depth = 3);

struct NilpotentSpanReport {
  bool pass = false;
  int nil_degree = 0;
  BoundsReport bounds;
  std::optional<Matrix> witness;
};

struct NilpotentSpanOptions {
  std::uint64_t budget = 100'000;
  unsigned workers = 0;
};

/// Requires refine to certify rho(M) < 1e-12 (else PreconditionNotCertified),
/// then checks that A(M)^k = 0 for some k <= dim A(M) + 1.
NilpotentSpanReport check_nilpotent_span(const MatrixSet& set, const NilpotentSpanOptions& options = {});

struct ChainRow {
  Eigen::Index ideal_dim = 0;
  Eigen::Index rep_dim = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct ChainOptions {
  /// Enumeration depth for the per-quotient sandwich; 0 picks the deepest
  /// depth whose word count stays under `max_words`.
  int depth = 0;
  std::uint64_t max_words = 20'000;
  double width = 1e-3;
  std::uint64_t budget = 100'000;
  unsigned workers = 0;
};

struct ChainReport {
  std::vector<ChainRow> rows;
  bool monotone = false;
  BoundsReport final_direct;
  bool final_consistent = false;
  bool pass = false;
  int depth = 0;
};

/// Sandwich intervals for M / J_i along an increasing chain of ideals of A(M).
/// All quotients share the regular representation of A^1, so the upper
/// endpoints shrink along the chain. Throws NotAChain if some J_i is not
/// contained in J_{i+1} or the ideals do not share a parent containing M.
ChainReport ideal_chain_monotonicity(const MatrixSet& set, const std::vector<Ideal>& chain,
                                     const ChainOptions& options = {});

}  // namespace jsr

#endif  // JSR_ALGEBRA_HPP
