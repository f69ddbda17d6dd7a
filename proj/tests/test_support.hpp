#ifndef JSR_TEST_SUPPORT_HPP
#define JSR_TEST_SUPPORT_HPP

// Seeded generators and brute-force oracles shared by the test binaries.
// The oracles deliberately avoid the library's eigen-solvers: 2x2 spectral
// radii and norms use the quadratic formula, larger ones go through SVD.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jsr/algebra.hpp"
#include "jsr/bounds.hpp"

namespace jsr::test {

using cd = std::complex<double>;

inline Matrix random_real(std::mt19937_64& rng, Eigen::Index dim, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = u(rng);
  return m;
}

inline Matrix random_complex(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = cd(g(rng), g(rng));
  return m;
}

/// dim in [1, max_dim], generators in [1, max_gens], entries uniform in [-1, 1].
inline MatrixSet random_set(std::mt19937_64& rng, int max_dim, int max_gens) {
  std::uniform_int_distribution<int> dd(1, max_dim), gg(1, max_gens);
  const int d = dd(rng), m = gg(rng);
  std::vector<Matrix> gens;
  for (int i = 0; i < m; ++i) gens.push_back(random_real(rng, d));
  return MatrixSet(std::move(gens));
}

/// Random block-upper-triangular set: dim 2..max_dim split into 2 or 3
/// diagonal blocks, each generator full inside its block pattern.
inline MatrixSet random_block_upper(std::mt19937_64& rng, int max_dim, int max_gens) {
  std::uniform_int_distribution<int> dd(2, max_dim), gg(1, max_gens);
  const int d = dd(rng), m = gg(rng);
  std::vector<int> block_of(static_cast<std::size_t>(d));
  std::bernoulli_distribution cut(0.5);
  int b = 0;
  for (int i = 0; i < d; ++i) {
    if (i > 0 && (cut(rng) || (i == d - 1 && b == 0))) ++b;
    block_of[static_cast<std::size_t>(i)] = b;
  }
  std::vector<Matrix> gens;
  for (int k = 0; k < m; ++k) {
    Matrix g = random_real(rng, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (block_of[static_cast<std::size_t>(i)] > block_of[static_cast<std::size_t>(j)]) g(i, j) = 0.0;
    gens.push_back(g);
  }
  return MatrixSet(std::move(gens));
}

inline MatrixSet random_strictly_upper(std::mt19937_64& rng, int min_dim, int max_dim, int max_gens) {
  std::uniform_int_distribution<int> dd(min_dim, max_dim), gg(1, max_gens);
  const int d = dd(rng), m = gg(rng);
  std::vector<Matrix> gens;
  for (int k = 0; k < m; ++k) {
    Matrix g = random_real(rng, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) g(i, j) = 0.0;
    gens.push_back(g);
  }
  return MatrixSet(std::move(gens));
}

/// A conjugated block-upper-triangular set, so the radical is not simply the
/// strictly upper part in the standard basis.
inline MatrixSet random_hidden_block_upper(std::mt19937_64& rng, int max_dim, int max_gens) {
  const MatrixSet base = random_block_upper(rng, max_dim, max_gens);
  const Matrix s = Matrix::Identity(base.dim(), base.dim()) + 0.3 * random_real(rng, base.dim());
  const Matrix s_inv = s.inverse();
  std::vector<Matrix> gens;
  for (const Matrix& g : base.generators()) gens.push_back(s * g * s_inv);
  return MatrixSet(std::move(gens));
}

// ---------------------------------------------------------------- oracles

namespace oracle {

using M2 = std::array<cd, 4>;  // row-major 2x2

inline M2 from(const Matrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

inline M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

/// Roots of the characteristic polynomial l^2 - tr l + det.
inline double rho(const M2& a) {
  const cd tr = a[0] + a[3];
  const cd det = a[0] * a[3] - a[1] * a[2];
  const cd disc = std::sqrt(tr * tr - 4.0 * det);
  return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

/// Largest singular value: sqrt of the top root of l^2 - ||a||_F^2 l + |det|^2.
inline double norm(const M2& a) {
  double f2 = 0.0;
  for (const cd& x : a) f2 += std::norm(x);
  const double det2 = std::norm(a[0] * a[3] - a[1] * a[2]);
  return std::sqrt((f2 + std::sqrt(std::max(0.0, f2 * f2 - 4.0 * det2))) / 2.0);
}

struct Sandwich {
  double lower = 0.0;  // max_{k<=n} max_P rho(P)^(1/k)
  double upper = 0.0;  // min_{k<=n} ||M^k||^(1/k)
  std::vector<double> lower_at;
  std::vector<double> upper_at;
};

/// Exhaustive sandwich for 2x2 sets by recursion over all words.
inline Sandwich brute_sandwich_2x2(const std::vector<Matrix>& gens, int n) {
  std::vector<M2> g;
  for (const Matrix& m : gens) g.push_back(from(m));
  std::vector<double> max_rho(static_cast<std::size_t>(n) + 1, 0.0), max_norm(max_rho);
  auto rec = [&](auto&& self, const M2& p, int k) -> void {
    max_rho[static_cast<std::size_t>(k)] = std::max(max_rho[static_cast<std::size_t>(k)], rho(p));
    max_norm[static_cast<std::size_t>(k)] = std::max(max_norm[static_cast<std::size_t>(k)], norm(p));
    if (k == n) return;
    for (const M2& x : g) self(self, mul(p, x), k + 1);
  };
  for (const M2& x : g) rec(rec, x, 1);
  Sandwich s;
  s.upper = INFINITY;
  for (int k = 1; k <= n; ++k) {
    const double inv = 1.0 / k;
    s.lower = std::max(s.lower, std::pow(max_rho[static_cast<std::size_t>(k)], inv));
    s.upper = std::min(s.upper, std::pow(max_norm[static_cast<std::size_t>(k)], inv));
    s.lower_at.push_back(s.lower);
    s.upper_at.push_back(s.upper);
  }
  return s;
}

/// Norm through Eigen's SVD, an independent route from the a^H a eigenvalues.
inline double svd_norm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

}  // namespace oracle
}  // namespace jsr::test

#endif  // JSR_TEST_SUPPORT_HPP
