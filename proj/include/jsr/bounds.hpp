#ifndef JSR_BOUNDS_HPP
#define JSR_BOUNDS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "jsr/set_dynamics.hpp"

namespace jsr {

/// A lower bound rho(P)^(1/k) together with the word P that attains it.
struct WitnessedValue {
  double value = 0.0;
  ProductWord witness;
};

/// r_n(M) = max over k <= n and P in M^k of rho(P)^(1/k). Ties prefer the
/// shortest, then lexicographically smallest word.
WitnessedValue lower_bound_r(const MatrixSet& set, int n, const EnumerationLimits& limits = {});

/// beta_n(M) = min over k <= n of ||M^k||^(1/k).
double upper_bound(const MatrixSet& set, int n, const EnumerationLimits& limits = {});

struct BoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  ProductWord lower_witness;
  int depth_used = 0;
  std::uint64_t nodes_explored = 0;
  bool converged = false;

  double width() const noexcept { return upper - lower; }
};

struct RefineOptions {
  double width = 1e-3;
  /// Budget in words evaluated, summed over all deepening passes.
  std::uint64_t budget = 1'000'000;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
  NormKind norm = NormKind::Spectral;
  int max_depth = 4096;
  Eigen::Index max_dim = 64;
  std::size_t max_generators = 64;
};

/// Branch-and-bound over the product tree with iterative deepening.
///
/// Each pass to depth D walks the tree in lexicographic order and cuts a
/// branch at a product P of length k once ||P||^(1/k) <= lower + width, with
/// `lower` frozen at the value reached by the previous pass. The leaves of a
/// pass cover every infinite word, so the largest leaf value ||P||^(1/|P|)
/// bounds rho(M) from above. Spectral radii of the products seen give the
/// lower bound. Products are carried normalized with a separate log scale.
///
/// Subtrees below a fixed prefix depth are handed to worker threads and
/// reduced in prefix order, and a pass that overruns the budget is discarded
/// whole, so reports do not depend on scheduling or worker count. The first
/// level is always evaluated. Running out of budget returns the best report
/// so far with converged = false. A one-matrix set is answered directly by
/// its spectral radius. Both endpoints are moved outward by 1e-12 relative
/// to absorb rounding in the norm and eigenvalue computations.
BoundsReport refine(const MatrixSet& set, const RefineOptions& options);

inline BoundsReport refine(const MatrixSet& set, double width, std::uint64_t budget, unsigned workers = 0) {
  RefineOptions o;
  o.width = width;
  o.budget = budget;
  o.workers = workers;
  return refine(set, o);
}

struct BergerWangReport {
  double r_lower = 0.0;
  double rho_upper = 0.0;
  double gap = 0.0;
  bool pass = false;
  BoundsReport bounds;
};

/// Checks that r(M) and rho(M) meet within `tol`, which holds for every finite
/// set of matrices; a failure only means the budget was too small.
BergerWangReport verify_berger_wang(const MatrixSet& set, double tol, std::uint64_t budget,
                                    unsigned workers = 0);

/// Distance between [l1, u1] and [l2, u2]; zero when they overlap.
double interval_distance(double l1, double u1, double l2, double u2);

/// Adds to each generator a complex Gaussian matrix rescaled to spectral norm eps.
MatrixSet perturb(const MatrixSet& set, double eps, std::mt19937_64& rng);

struct ContinuityOptions {
  std::vector<double> eps_schedule;
  int trials = 20;
  std::uint64_t seed = 1;
  double width = 1e-3;
  std::uint64_t budget = 200'000;
  unsigned workers = 0;
};

struct ContinuityRow {
  double eps = 0.0;
  double max_dev = 0.0;
  /// False when some refine run (base or perturbed) did not converge.
  bool complete = true;
};

std::vector<ContinuityRow> continuity_probe(const MatrixSet& set, const ContinuityOptions& options);

}  // namespace jsr

#endif  // JSR_BOUNDS_HPP
