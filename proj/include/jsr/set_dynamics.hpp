#ifndef JSR_SET_DYNAMICS_HPP
#define JSR_SET_DYNAMICS_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "jsr/matrix_core.hpp"

namespace jsr {

/// A finite, ordered, nonempty family of square matrices of a common size.
class MatrixSet {
 public:
  explicit MatrixSet(std::vector<Matrix> generators, std::string name = {});

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const Matrix& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Matrix>& generators() const noexcept { return generators_; }
  const std::string& name() const noexcept { return name_; }

  /// The set {c * a : a in this set}.
  MatrixSet scaled(Scalar c) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<Matrix> generators_;
  std::string name_;
};

using Letter = std::uint32_t;

/// Generator indices, multiplied left to right.
struct ProductWord {
  std::vector<Letter> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }

  friend bool operator==(const ProductWord&, const ProductWord&) = default;
  friend auto operator<=>(const ProductWord&, const ProductWord&) = default;
};

std::string to_string(const ProductWord& w);

Matrix evaluate(const MatrixSet& set, const ProductWord& word);

struct EnumerationLimits {
  std::uint64_t max_words = 10'000'000;
  /// Deepest word the enumerator keeps prefix products for.
  int max_depth = 1 << 16;
  NormKind norm = NormKind::Spectral;
};

/// sum_{k=1..n} m^k, saturating at UINT64_MAX.
std::uint64_t words_up_to(std::size_t generators, int n);

/// Throws Error(BudgetExceeded) unless all words of length <= n fit the limits.
void require_enumerable(const MatrixSet& set, int n, const EnumerationLimits& limits);

/// Depth-first enumeration of every word of length 1..nmax in lexicographic
/// order. Each product is built from its parent by one right-multiplication.
/// `visit(letters, product)` is invoked once per word, prefixes first.
template <typename Visitor>
void for_each_word(const MatrixSet& set, int nmax, Visitor&& visit) {
  const auto& g = set.generators();
  const auto m = static_cast<Letter>(g.size());
  std::vector<Letter> letters{0};
  std::vector<Matrix> prefix{g[0]};
  while (true) {
    visit(static_cast<const std::vector<Letter>&>(letters), static_cast<const Matrix&>(prefix.back()));
    if (static_cast<int>(letters.size()) < nmax) {
      Matrix next = prefix.back() * g[0];
      letters.push_back(0);
      prefix.push_back(std::move(next));
      continue;
    }
    while (!letters.empty() && letters.back() + 1 == m) {
      letters.pop_back();
      prefix.pop_back();
    }
    if (letters.empty()) return;
    ++letters.back();
    prefix.pop_back();
    if (prefix.empty())
      prefix.push_back(g[letters.back()]);
    else
      prefix.push_back(prefix.back() * g[letters.back()]);
  }
}

/// ||M^n||: the largest norm over all products of exactly n generators.
double set_norm(const MatrixSet& set, int n, const EnumerationLimits& limits = {});

struct LeadingProduct {
  int length = 0;
  ProductWord word;
  double norm = 0.0;
};

/// For each n <= nmax at which the running maximum norm over lengths <= n is
/// attained at length exactly n, the lexicographically first maximizer.
std::vector<LeadingProduct> leading_products(const MatrixSet& set, int nmax,
                                             const EnumerationLimits& limits = {});

/// Leading products scaled to unit norm. Zero products are skipped.
std::vector<Matrix> normalized_leading_sequence(const MatrixSet& set, int nmax,
                                                const EnumerationLimits& limits = {});

}  // namespace jsr

#endif  // JSR_SET_DYNAMICS_HPP
