#include "jsr/set_dynamics.hpp"

#include <limits>
#include <sstream>

#include "detail/ties.hpp"

namespace jsr {

MatrixSet::MatrixSet(std::vector<Matrix> generators, std::string name)
    : generators_(std::move(generators)), name_(std::move(name)) {
  if (generators_.empty()) throw Error(Errc::InvalidArgument, "matrix set needs at least one generator");
  dim_ = generators_.front().rows();
  if (dim_ < 1) throw Error(Errc::InvalidArgument, "matrix dimension must be positive");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Matrix& g = generators_[i];
    if (g.rows() != dim_ || g.cols() != dim_)
      throw Error(Errc::DimensionMismatch, "generator " + std::to_string(i) + " is not " +
                                               std::to_string(dim_) + "x" + std::to_string(dim_));
    if (!all_finite(g))
      throw Error(Errc::NonFinite, "generator " + std::to_string(i) + " has a non-finite entry");
  }
}

MatrixSet MatrixSet::scaled(Scalar c) const {
  std::vector<Matrix> out;
  out.reserve(generators_.size());
  for (const Matrix& g : generators_) out.push_back(c * g);
  return MatrixSet(std::move(out), name_);
}

std::string to_string(const ProductWord& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.letters.size(); ++i) os << (i ? "," : "") << w.letters[i];
  os << ')';
  return os.str();
}

Matrix evaluate(const MatrixSet& set, const ProductWord& word) {
  if (word.empty()) throw Error(Errc::InvalidArgument, "cannot evaluate the empty word");
  for (Letter l : word.letters)
    if (l >= set.size())
      throw Error(Errc::IndexOutOfRange, "letter " + std::to_string(l) + " with only " +
                                             std::to_string(set.size()) + " generators");
  Matrix p = set[word.letters.front()];
  for (std::size_t i = 1; i < word.letters.size(); ++i) p = p * set[word.letters[i]];
  return p;
}

std::uint64_t words_up_to(std::size_t generators, int n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (int k = 1; k <= n; ++k) {
    if (level > kMax / generators) return kMax;
    level *= generators;
    if (total > kMax - level) return kMax;
    total += level;
  }
  return total;
}

void require_enumerable(const MatrixSet& set, int n, const EnumerationLimits& limits) {
  if (n < 1) throw Error(Errc::InvalidArgument, "word length must be positive");
  if (n > limits.max_depth)
    throw Error(Errc::BudgetExceeded, "depth " + std::to_string(n) + " exceeds enumeration depth cap");
  const std::uint64_t words = words_up_to(set.size(), n);
  if (words > limits.max_words)
    throw Error(Errc::BudgetExceeded, std::to_string(words) + " words exceed the cap of " +
                                          std::to_string(limits.max_words));
}

double set_norm(const MatrixSet& set, int n, const EnumerationLimits& limits) {
  require_enumerable(set, n, limits);
  double best = 0.0;
  for_each_word(set, n, [&](const std::vector<Letter>& letters, const Matrix& p) {
    if (static_cast<int>(letters.size()) == n) best = std::max(best, matrix_norm(p, limits.norm));
  });
  return best;
}

std::vector<LeadingProduct> leading_products(const MatrixSet& set, int nmax,
                                             const EnumerationLimits& limits) {
  require_enumerable(set, nmax, limits);
  std::vector<LeadingProduct> per_length(static_cast<std::size_t>(nmax) + 1);
  std::vector<bool> seen(per_length.size(), false);
  for_each_word(set, nmax, [&](const std::vector<Letter>& letters, const Matrix& p) {
    const std::size_t k = letters.size();
    const double nrm = matrix_norm(p, limits.norm);
    // Enumeration is lexicographic, so a near-tie keeps the earlier word.
    if (!seen[k] || detail::clearly_greater(nrm, per_length[k].norm)) {
      seen[k] = true;
      per_length[k] = {static_cast<int>(k), ProductWord{letters}, nrm};
    }
  });

  std::vector<LeadingProduct> out;
  double running = -1.0;
  for (int n = 1; n <= nmax; ++n) {
    const LeadingProduct& cand = per_length[static_cast<std::size_t>(n)];
    if (cand.norm >= running) {
      out.push_back(cand);
      running = cand.norm;
    }
  }
  return out;
}

std::vector<Matrix> normalized_leading_sequence(const MatrixSet& set, int nmax,
                                                const EnumerationLimits& limits) {
  std::vector<Matrix> out;
  for (const LeadingProduct& lp : leading_products(set, nmax, limits)) {
    if (lp.norm <= 0.0) continue;
    const Matrix t = evaluate(set, lp.word);
    out.push_back(t / op_norm(t));
  }
  return out;
}

}  // namespace jsr
