#include "jsr/lift.hpp"

#include <random>

namespace jsr {
namespace {

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(Errc::DimensionMismatch, "lift needs two square matrices of equal size");
}

// r_k for k = 1..n (index 0 unused).
std::vector<double> running_r(const MatrixSet& set, int n) {
  require_enumerable(set, n, {});
  std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
  for_each_word(set, n, [&](const std::vector<Letter>& letters, const Matrix& p) {
    const double rho = spectral_radius(p);
    const double v = rho < 1e-300 ? 0.0 : std::pow(rho, 1.0 / static_cast<double>(letters.size()));
    r[letters.size()] = std::max(r[letters.size()], v);
  });
  for (std::size_t k = 2; k < r.size(); ++k) r[k] = std::max(r[k], r[k - 1]);
  return r;
}

}  // namespace

Vector vec(const Matrix& x) { return x.reshaped(); }

Matrix unvec(const Vector& v, Eigen::Index dim) { return v.reshaped(dim, dim); }

LiftedOperator::LiftedOperator(const Matrix& a, const Matrix& b,
                               std::optional<std::pair<std::size_t, std::size_t>> tag)
    : source_dim_(a.rows()), tag_(tag) {
  require_same_dim(a, b);
  matrix_ = kron(b.transpose(), a);

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  const double scale = a.norm() * b.norm();
  for (int t = 0; t < 20; ++t) {
    Matrix x(source_dim_, source_dim_);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Scalar(gauss(rng), gauss(rng));
    const double residual = (apply(x) - a * x * b).norm();
    if (residual > 1e-10 * scale * x.norm() + 1e-300)
      throw Error(Errc::InvalidArgument, "lifted operator disagrees with x -> a x b");
  }
}

LiftedOperator lift_LR(const Matrix& a, const Matrix& b, Eigen::Index max_dim) {
  require_same_dim(a, b);
  if (a.rows() * a.rows() > max_dim)
    throw Error(Errc::DimensionOverflow, "lifted dimension " + std::to_string(a.rows() * a.rows()) +
                                             " exceeds cap " + std::to_string(max_dim));
  return LiftedOperator(a, b);
}

MatrixSet lift_set(const MatrixSet& set, Eigen::Index max_dim) {
  std::vector<Matrix> out;
  out.reserve(set.size() * set.size());
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j) out.push_back(lift_LR(set[i], set[j], max_dim).matrix());
  return MatrixSet(std::move(out), set.name().empty() ? std::string{} : "lift(" + set.name() + ")");
}

PassIdentityReport check_pass_identities(const MatrixSet& set, const PassIdentityOptions& o) {
  const MatrixSet lifted = lift_set(set);
  PassIdentityReport rep;

  RefineOptions ro;
  ro.budget = o.budget;
  ro.workers = o.workers;
  ro.width = o.width;
  rep.set_bounds = refine(set, ro);
  // Squaring stretches widths by about 2 rho.
  ro.width = o.width * std::max(1.0, 2.0 * rep.set_bounds.upper);
  rep.lifted_bounds = refine(lifted, ro);

  const BoundsReport& s = rep.set_bounds;
  const BoundsReport& l = rep.lifted_bounds;
  rep.rho_sq_gap = interval_distance(l.lower, l.upper, s.lower * s.lower, s.upper * s.upper);
  bool ok = rep.rho_sq_gap <= o.rel_tol * std::max(1.0, s.upper * s.upper);

  const std::vector<double> r_set = running_r(set, o.depth);
  const std::vector<double> r_lift = running_r(lifted, o.depth);
  for (int k = 1; k <= o.depth; ++k) {
    const double want = r_set[static_cast<std::size_t>(k)] * r_set[static_cast<std::size_t>(k)];
    const double got = r_lift[static_cast<std::size_t>(k)];
    const double gap = std::abs(got - want);
    rep.r_exact_gap = std::max(rep.r_exact_gap, gap);
    ok = ok && gap <= o.rel_tol * std::max(want, got);
  }
  rep.pass = ok;
  return rep;
}

double check_w_product_identity(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  const Matrix id = identity(a.rows());
  const Matrix ba = b * a;
  const Matrix w_ba = lift_LR(ba, ba).matrix();
  const Matrix w_a = lift_LR(a, a).matrix();
  const Matrix w_b = lift_LR(b, b).matrix();
  const Matrix l_a = lift_LR(a, id).matrix();
  const Matrix l_b = lift_LR(b, id).matrix();
  const Matrix r_a = lift_LR(id, a).matrix();
  const Matrix r_b = lift_LR(id, b).matrix();
  const double first = (w_ba - l_b * w_a * r_b).norm();
  const double second = (w_ba - r_a * w_b * l_a).norm();
  return std::max(first, second);
}

}  // namespace jsr
