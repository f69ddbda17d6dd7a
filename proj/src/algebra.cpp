#include "jsr/algebra.hpp"

#include <cmath>

#include "jsr/lift.hpp"

namespace jsr {
namespace {

constexpr double kSpanTol = 1e-9;
constexpr double kRepTol = 1e-8;

// Incremental orthonormal basis with one re-orthogonalization pass.
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index ambient) : q_(ambient, 0) {}

  bool add(const Vector& w, double tol) {
    Vector r = w;
    for (int pass = 0; pass < 2 && q_.cols() > 0; ++pass) r -= q_ * (q_.adjoint() * r);
    const double n = r.norm();
    if (!(n > tol)) return false;
    q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
    q_.col(q_.cols() - 1) = r / n;
    return true;
  }

  Eigen::Index size() const noexcept { return q_.cols(); }
  const Matrix& basis() const noexcept { return q_; }

 private:
  Matrix q_;
};

BoundsReport zero_report() {
  BoundsReport r;
  r.converged = true;
  return r;
}

bool widened_overlap(double l1, double u1, double l2, double u2, double rel) {
  return interval_distance(l1 * (1.0 - rel), u1 * (1.0 + rel), l2 * (1.0 - rel), u2 * (1.0 + rel)) == 0.0;
}

}  // namespace

// ---------------------------------------------------------------- FDAlgebra

struct FDAlgebra::Impl {
  Eigen::Index ambient_dim = 0;
  std::vector<Matrix> basis;
  Matrix basis_vec;  // d^2 x n, orthonormal columns
  std::vector<Matrix> left;
  std::vector<Matrix> right;
  std::optional<Vector> unit;
};

FDAlgebra::FDAlgebra(Eigen::Index ambient_dim, const std::vector<Matrix>& elements) {
  auto impl = std::make_shared<Impl>();
  impl->ambient_dim = ambient_dim;
  const Eigen::Index d2 = ambient_dim * ambient_dim;
  const auto n = static_cast<Eigen::Index>(elements.size());

  Matrix cols(d2, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Matrix& e = elements[static_cast<std::size_t>(i)];
    if (e.rows() != ambient_dim || e.cols() != ambient_dim)
      throw Error(Errc::DimensionMismatch, "algebra element has the wrong size");
    cols.col(i) = vec(e);
  }
  if (n > 0) {
    const Eigen::JacobiSVD<Matrix> svd(cols);
    const auto& s = svd.singularValues();
    if (n > d2 || !(s(n - 1) >= 1e-9 * s(0)))
      throw Error(Errc::InvalidArgument, "algebra basis is linearly dependent");
  }
  SpanBuilder span(d2);
  for (Eigen::Index i = 0; i < n; ++i) span.add(cols.col(i), 0.0);
  impl->basis_vec = span.basis();
  for (Eigen::Index i = 0; i < n; ++i) impl->basis.push_back(unvec(impl->basis_vec.col(i), ambient_dim));

  impl->left.assign(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  impl->right.assign(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vector p = vec(impl->basis[static_cast<std::size_t>(i)] * impl->basis[static_cast<std::size_t>(j)]);
      const Vector c = impl->basis_vec.adjoint() * p;
      if ((p - impl->basis_vec * c).norm() > kSpanTol)
        throw Error(Errc::InvalidArgument, "span is not closed under multiplication");
      impl->left[static_cast<std::size_t>(i)].col(j) = c;
      impl->right[static_cast<std::size_t>(j)].col(i) = c;
    }

  if (n > 0) {
    // e b_i = b_i and b_i e = b_i for every i, solved in least squares.
    Matrix system(2 * n * n, n);
    Vector rhs = Vector::Zero(2 * n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < n; ++k) {
        system.block(i * n, k, n, 1) = impl->left[static_cast<std::size_t>(k)].col(i);
        system.block((n + i) * n, k, n, 1) = impl->right[static_cast<std::size_t>(k)].col(i);
      }
      rhs(i * n + i) = 1.0;
      rhs((n + i) * n + i) = 1.0;
    }
    const Vector e = system.completeOrthogonalDecomposition().solve(rhs);
    if ((system * e - rhs).norm() <= kSpanTol * (1.0 + e.norm())) impl->unit = e;
  }
  impl_ = std::move(impl);
}

Eigen::Index FDAlgebra::ambient_dim() const noexcept { return impl_->ambient_dim; }
Eigen::Index FDAlgebra::dim() const noexcept { return static_cast<Eigen::Index>(impl_->basis.size()); }
const std::vector<Matrix>& FDAlgebra::basis() const noexcept { return impl_->basis; }
const std::optional<Vector>& FDAlgebra::unit() const noexcept { return impl_->unit; }

Scalar FDAlgebra::structure_constant(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
  return impl_->left.at(static_cast<std::size_t>(i))(k, j);
}

const Matrix& FDAlgebra::left_mult(Eigen::Index i) const { return impl_->left.at(static_cast<std::size_t>(i)); }
const Matrix& FDAlgebra::right_mult(Eigen::Index j) const { return impl_->right.at(static_cast<std::size_t>(j)); }

Matrix FDAlgebra::left_operator(const Vector& x) const {
  const Eigen::Index n = dim();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out += x(i) * impl_->left[static_cast<std::size_t>(i)];
  return out;
}

Vector FDAlgebra::multiply(const Vector& x, const Vector& y) const { return left_operator(x) * y; }

Vector FDAlgebra::coordinates(const Matrix& m) const { return impl_->basis_vec.adjoint() * vec(m); }

Matrix FDAlgebra::element(const Vector& coords) const {
  return unvec(impl_->basis_vec * coords, impl_->ambient_dim);
}

double FDAlgebra::distance(const Matrix& m) const {
  const Vector v = vec(m);
  return (v - impl_->basis_vec * (impl_->basis_vec.adjoint() * v)).norm();
}

// -------------------------------------------------------------------- Ideal

Ideal::Ideal(FDAlgebra parent, Matrix orthonormal_basis)
    : parent_(std::move(parent)), basis_(std::move(orthonormal_basis)) {
  const Eigen::Index n = parent_.dim();
  if (basis_.rows() != n) throw Error(Errc::NotAnIdeal, "coefficient vectors do not match the parent");
  if (basis_.cols() == 0) return;
  const Matrix proj = basis_ * basis_.adjoint();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Matrix l = parent_.left_mult(i) * basis_;
    const Matrix r = parent_.right_mult(i) * basis_;
    if ((l - proj * l).norm() > kSpanTol || (r - proj * r).norm() > kSpanTol)
      throw Error(Errc::NotAnIdeal, "span is not closed under multiplication by the algebra");
  }
}

Ideal::Ideal(FDAlgebra parent, const std::vector<Vector>& generators)
    : Ideal(parent, [&] {
        SpanBuilder span(parent.dim());
        for (const Vector& g : generators) {
          if (g.size() != parent.dim()) throw Error(Errc::NotAnIdeal, "coefficient vector has the wrong length");
          const double n = g.norm();
          if (n > 0.0) span.add(g / n, kSpanTol);
        }
        return span.basis();
      }()) {}

Ideal Ideal::zero(const FDAlgebra& parent) { return Ideal(parent, Matrix(parent.dim(), 0)); }

Ideal Ideal::whole(const FDAlgebra& parent) {
  return Ideal(parent, Matrix(Matrix::Identity(parent.dim(), parent.dim())));
}

Ideal Ideal::from_matrices(const FDAlgebra& parent, const std::vector<Matrix>& elements) {
  std::vector<Vector> coords;
  for (const Matrix& e : elements) {
    if (parent.distance(e) > kRepTol * std::max(1.0, e.norm()))
      throw Error(Errc::NotAnIdeal, "ideal generator lies outside the algebra");
    coords.push_back(parent.coordinates(e));
  }
  return Ideal(parent, coords);
}

Ideal Ideal::generated_by(const FDAlgebra& parent, const Vector& x) {
  SpanBuilder span(parent.dim());
  const double n = x.norm();
  if (n > 0.0) span.add(x / n, kSpanTol);
  for (Eigen::Index k = 0; k < span.size(); ++k) {
    const Vector v = span.basis().col(k);
    for (Eigen::Index i = 0; i < parent.dim(); ++i) {
      span.add(parent.left_mult(i) * v, kSpanTol);
      span.add(parent.right_mult(i) * v, kSpanTol);
    }
  }
  return Ideal(parent, span.basis());
}

std::vector<Matrix> Ideal::ambient_basis() const {
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < basis_.cols(); ++k) out.push_back(parent_.element(basis_.col(k)));
  return out;
}

bool Ideal::contains(const Vector& x, double tol) const {
  const Vector r = basis_.cols() > 0 ? Vector(x - basis_ * (basis_.adjoint() * x)) : x;
  return r.norm() <= tol * std::max(1.0, x.norm());
}

bool Ideal::contains(const Ideal& other, double tol) const {
  if (!parent_.same_as(other.parent_)) return false;
  for (Eigen::Index k = 0; k < other.basis_.cols(); ++k)
    if (!contains(Vector(other.basis_.col(k)), tol)) return false;
  return true;
}

Ideal Ideal::product(const Ideal& other) const {
  if (!parent_.same_as(other.parent_)) throw Error(Errc::NotAnIdeal, "ideals of different algebras");
  SpanBuilder span(parent_.dim());
  for (Eigen::Index a = 0; a < basis_.cols(); ++a) {
    const Matrix left = parent_.left_operator(basis_.col(a));
    for (Eigen::Index b = 0; b < other.basis_.cols(); ++b) span.add(left * other.basis_.col(b), kSpanTol);
  }
  return Ideal(parent_, span.basis());
}

std::optional<int> Ideal::nilpotency_degree() const {
  Ideal power = *this;
  int k = 1;
  while (power.dim() > 0) {
    Ideal next = power.product(*this);
    if (next.dim() >= power.dim()) return std::nullopt;
    power = std::move(next);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------- QuotientAlgebra

QuotientAlgebra::QuotientAlgebra(FDAlgebra parent, Ideal ideal)
    : parent_(std::move(parent)), ideal_(std::move(ideal)) {
  if (!ideal_.parent().same_as(parent_)) throw Error(Errc::NotAnIdeal, "ideal belongs to another algebra");
  const Eigen::Index n = parent_.dim();
  const Eigen::Index m = ideal_.dim();
  if (m == 0) {
    complement_ = Matrix::Identity(n, n);
  } else {
    const Eigen::HouseholderQR<Matrix> qr(ideal_.basis());
    const Matrix full = qr.householderQ();
    complement_ = full.rightCols(n - m);
  }

  const Eigen::Index k = complement_.cols();
  std::vector<Matrix> reps;
  for (Eigen::Index i = 0; i < n; ++i) reps.push_back(rep(Vector(Vector::Unit(n, i))));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Matrix lhs = reps[static_cast<std::size_t>(i)] * reps[static_cast<std::size_t>(j)];
      const Matrix rhs = rep(Vector(parent_.left_mult(i).col(j)));
      const double scale = std::max(1.0, reps[static_cast<std::size_t>(i)].norm() * reps[static_cast<std::size_t>(j)].norm());
      if ((lhs - rhs).norm() > kRepTol * scale)
        throw Error(Errc::NotAnIdeal, "quotient representation is not multiplicative");
    }
  for (Eigen::Index c = 0; c < m; ++c)
    if (rep(Vector(ideal_.basis().col(c))).norm() > kRepTol)
      throw Error(Errc::NotAnIdeal, "representation does not vanish on the ideal");
  if (k > 0 && rep_dim() > 0) {
    Matrix images(rep_dim() * rep_dim(), k);
    for (Eigen::Index p = 0; p < k; ++p) images.col(p) = vec(rep(Vector(complement_.col(p))));
    const Eigen::JacobiSVD<Matrix> svd(images);
    if (svd.singularValues()(k - 1) < kRepTol)
      throw Error(Errc::IllConditioned, "quotient representation is not faithful");
  }
}

Eigen::Index QuotientAlgebra::rep_dim() const noexcept {
  return complement_.cols() + (parent_.unital() ? 0 : 1);
}

Matrix QuotientAlgebra::rep(const Vector& coords) const {
  const Eigen::Index k = complement_.cols();
  const Matrix block = complement_.adjoint() * parent_.left_operator(coords) * complement_;
  if (parent_.unital()) return block;
  Matrix out = Matrix::Zero(k + 1, k + 1);
  out.topLeftCorner(k, k) = block;
  out.topRightCorner(k, 1) = complement_.adjoint() * coords;
  return out;
}

Matrix QuotientAlgebra::rep(const Matrix& m) const {
  if (parent_.distance(m) > kRepTol * std::max(1.0, m.norm()))
    throw Error(Errc::InvalidArgument, "matrix is not an element of the algebra");
  return rep(parent_.coordinates(m));
}

std::optional<MatrixSet> QuotientAlgebra::image(const MatrixSet& set) const {
  if (rep_dim() == 0) return std::nullopt;
  std::vector<Matrix> out;
  out.reserve(set.size());
  for (const Matrix& g : set.generators()) out.push_back(rep(g));
  return MatrixSet(std::move(out), set.name());
}

FDAlgebra QuotientAlgebra::as_algebra() const {
  std::vector<Matrix> mats;
  for (Eigen::Index p = 0; p < complement_.cols(); ++p) mats.push_back(rep(Vector(complement_.col(p))));
  return FDAlgebra(rep_dim(), mats);
}

// --------------------------------------------------------------- operations

FDAlgebra generated_subalgebra(const MatrixSet& set, Eigen::Index max_dim) {
  const Eigen::Index d = set.dim();
  const Eigen::Index cap = max_dim > 0 ? std::min(max_dim, d * d) : d * d;
  SpanBuilder span(d * d);
  auto add = [&](const Matrix& m) {
    if (span.add(vec(m), kSpanTol) && span.size() > cap)
      throw Error(Errc::DimensionCap, "generated algebra exceeds dimension " + std::to_string(cap));
  };
  for (const Matrix& g : set.generators()) {
    const double n = g.norm();
    if (n > 0.0) add(g / n);
  }
  // Pair (i, j) is multiplied once, when max(i, j) is reached.
  for (Eigen::Index k = 0; k < span.size(); ++k) {
    const Matrix bk = unvec(span.basis().col(k), d);
    for (Eigen::Index j = 0; j <= k; ++j) {
      const Matrix bj = unvec(span.basis().col(j), d);
      add(bk * bj);
      if (j != k) add(bj * bk);
    }
  }
  std::vector<Matrix> basis;
  for (Eigen::Index k = 0; k < span.size(); ++k) basis.push_back(unvec(span.basis().col(k), d));
  return FDAlgebra(d, basis);
}

Ideal jacobson_radical(const FDAlgebra& algebra) {
  const Eigen::Index n = algebra.dim();
  if (n == 0) return Ideal::zero(algebra);
  Matrix gram(n, n);
  const auto& b = algebra.basis();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      gram(i, j) = (b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]).trace();

  const Eigen::JacobiSVD<Matrix> svd(gram, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return Ideal::whole(algebra);
  const double cutoff = 1e-8 * s(0);
  const double band = std::sqrt(1e3);
  std::vector<Vector> kernel;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s(i) > cutoff / band && s(i) < cutoff * band)
      throw Error(Errc::IllConditioned, "trace form has no clear gap around the rank cutoff");
    if (s(i) <= cutoff) kernel.push_back(svd.matrixV().col(i));
  }
  return Ideal(algebra, kernel);
}

QuotientAlgebra quotient(const FDAlgebra& algebra, const Ideal& ideal) { return QuotientAlgebra(algebra, ideal); }

std::vector<Ideal> radical_power_chain(const FDAlgebra& algebra) {
  const Ideal rad = jacobson_radical(algebra);
  std::vector<Ideal> powers;
  if (rad.dim() > 0) {
    powers.push_back(rad);
    while (true) {
      Ideal next = powers.back().product(rad);
      if (next.dim() == 0 || next.dim() >= powers.back().dim()) break;
      powers.push_back(std::move(next));
    }
  }
  std::vector<Ideal> chain{Ideal::zero(algebra)};
  for (auto it = powers.rbegin(); it != powers.rend(); ++it) chain.push_back(*it);
  if (algebra.dim() > chain.back().dim()) chain.push_back(Ideal::whole(algebra));
  return chain;
}

InessentialReport check_inessential(const MatrixSet& set, const InessentialOptions& o) {
  InessentialReport rep;
  const FDAlgebra algebra = generated_subalgebra(set);
  const Ideal rad = jacobson_radical(algebra);
  const QuotientAlgebra q = quotient(algebra, rad);
  rep.algebra_dim = algebra.dim();
  rep.radical_dim = rad.dim();
  rep.rep_dim = q.rep_dim();

  rep.full = refine(set, o.width, o.budget, o.workers);
  const std::optional<MatrixSet> image = q.image(set);
  rep.quotient = image ? refine(*image, o.width, o.budget, o.workers) : zero_report();

  rep.gap = interval_distance(rep.full.lower, rep.full.upper, rep.quotient.lower, rep.quotient.upper);
  rep.pass = widened_overlap(rep.full.lower, rep.full.upper, rep.quotient.lower, rep.quotient.upper, o.widen_rel);
  return rep;
}

RcqVerdict rcq_membership(const FDAlgebra& algebra, const Vector& x, int depth) {
  RcqVerdict out;
  const double nx = x.norm();
  if (!(nx > 1e-12)) {
    out.member = true;
    out.evidence.nil_degree = 1;
    return out;
  }
  const Ideal generated = Ideal::generated_by(algebra, x);
  const std::optional<int> degree = generated.nilpotency_degree();
  if (degree && *degree <= algebra.dim() + 1) {
    out.member = true;
    out.evidence.nil_degree = degree;
    return out;
  }

  const Matrix xm = algebra.element(x / nx);
  std::vector<Matrix> scaled;
  for (const Matrix& b : algebra.basis()) scaled.push_back(xm * b);
  const MatrixSet xb(std::move(scaled));
  int n = std::max(depth, 1);
  while (n > 1 && words_up_to(xb.size(), n) > 100'000) --n;
  for_each_word(xb, n, [&](const std::vector<Letter>& letters, const Matrix& p) {
    if (out.evidence.witness) return;
    const double rho = spectral_radius(p);
    if (rho > 1e-8) {
      out.evidence.witness = ProductWord{letters};
      out.evidence.witness_rho = rho;
    }
  });
  return out;
}

NilpotentSpanReport check_nilpotent_span(const MatrixSet& set, const NilpotentSpanOptions& o) {
  NilpotentSpanReport rep;
  rep.bounds = refine(set, 1e-12, o.budget, o.workers);
  if (!(rep.bounds.upper < 1e-12))
    throw Error(Errc::PreconditionNotCertified,
                "refine did not certify a zero joint spectral radius (upper bound " +
                    std::to_string(rep.bounds.upper) + ")");
  const FDAlgebra algebra = generated_subalgebra(set);
  const Ideal whole = Ideal::whole(algebra);
  const std::optional<int> degree = whole.nilpotency_degree();
  if (degree && *degree <= algebra.dim() + 1) {
    rep.pass = true;
    rep.nil_degree = *degree;
    return rep;
  }
  Ideal power = whole;
  while (true) {
    Ideal next = power.product(whole);
    if (next.dim() >= power.dim()) break;
    power = std::move(next);
  }
  rep.witness = algebra.element(power.basis().col(0));
  return rep;
}

ChainReport ideal_chain_monotonicity(const MatrixSet& set, const std::vector<Ideal>& chain, const ChainOptions& o) {
  if (chain.empty()) throw Error(Errc::NotAChain, "empty chain");
  const FDAlgebra& parent = chain.front().parent();
  for (const Ideal& j : chain)
    if (!j.parent().same_as(parent)) throw Error(Errc::NotAChain, "ideals belong to different algebras");
  for (const Matrix& g : set.generators())
    if (g.rows() != parent.ambient_dim() || parent.distance(g) > kRepTol * std::max(1.0, g.norm()))
      throw Error(Errc::NotAChain, "generators lie outside the chain's algebra");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i + 1].contains(chain[i]))
      throw Error(Errc::NotAChain, "ideal " + std::to_string(i) + " is not contained in its successor");

  ChainReport rep;
  rep.depth = o.depth;
  if (rep.depth <= 0) {
    rep.depth = 1;
    while (rep.depth < 12 && words_up_to(set.size(), rep.depth + 1) <= o.max_words) ++rep.depth;
  }
  const EnumerationLimits limits{o.max_words > words_up_to(set.size(), rep.depth) ? o.max_words
                                                                                  : words_up_to(set.size(), rep.depth)};

  for (const Ideal& j : chain) {
    const QuotientAlgebra q(parent, j);
    ChainRow row{j.dim(), q.rep_dim(), 0.0, 0.0};
    if (const std::optional<MatrixSet> image = q.image(set)) {
      row.lower = lower_bound_r(*image, rep.depth, limits).value;
      row.upper = upper_bound(*image, rep.depth, limits);
    }
    rep.rows.push_back(row);
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].upper > rep.rows[i - 1].upper + 1e-8 * std::max(1.0, rep.rows[i - 1].upper))
      rep.monotone = false;

  const QuotientAlgebra last = quotient(parent, chain.back());
  const std::optional<MatrixSet> image = last.image(set);
  rep.final_direct = image ? refine(*image, o.width, o.budget, o.workers) : zero_report();
  rep.final_consistent = widened_overlap(rep.rows.back().lower, rep.rows.back().upper, rep.final_direct.lower,
                                         rep.final_direct.upper, 1e-8);
  rep.pass = rep.monotone && rep.final_consistent;
  return rep;
}

}  // namespace jsr
