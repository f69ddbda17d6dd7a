#include "jsr/bounds.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "detail/ties.hpp"

namespace jsr {
namespace {

constexpr double kDenormalGuard = 1e-300;
// Outward rounding applied to reported intervals. Norms and spectral radii
// come back a few ulps off, which matters when both bounds are tight.
constexpr double kRoundingRel = 1e-12;

double widened_width(double lower, double upper) {
  return upper * (1 + kRoundingRel) - lower * (1 - kRoundingRel);
}

double root_of(double x, std::size_t k) {
  if (x < kDenormalGuard) return 0.0;
  return std::pow(x, 1.0 / static_cast<double>(k));
}

struct Candidate {
  double value = -1.0;
  std::vector<Letter> word;
};

// Larger value wins; near-ties go to the shorter, then lexicographically smaller word.
bool better(const Candidate& a, const Candidate& b) {
  if (b.word.empty()) return !a.word.empty();
  if (detail::clearly_greater(a.value, b.value)) return true;
  if (detail::clearly_greater(b.value, a.value)) return false;
  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
  return a.word < b.word;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void check_caps(const MatrixSet& set, const RefineOptions& o) {
  if (!(o.width > 0.0) || !std::isfinite(o.width))
    throw Error(Errc::InvalidArgument, "refine width must be positive");
  if (set.dim() > o.max_dim)
    throw Error(Errc::DimensionOverflow, "dimension " + std::to_string(set.dim()) + " exceeds cap " +
                                             std::to_string(o.max_dim));
  if (set.size() > o.max_generators)
    throw Error(Errc::DimensionOverflow, std::to_string(set.size()) + " generators exceed cap " +
                                             std::to_string(o.max_generators));
}

struct PassResult {
  double leaf_max = 0.0;
  Candidate best;
  std::uint64_t nodes = 0;
  bool aborted = false;
};

struct Subtree {
  std::vector<Letter> letters;
  Matrix product;  // normalized
  double log_scale = 0.0;
};

// One deepening pass to a fixed depth. Pruning uses a threshold fixed for
// the whole pass so the visited tree is independent of traversal order.
class Pass {
 public:
  Pass(const MatrixSet& set, const RefineOptions& opts, int depth, int evaluated_depth, double threshold,
       std::uint64_t allowance)
      : set_(set),
        opts_(opts),
        depth_(depth),
        evaluated_depth_(evaluated_depth),
        threshold_(threshold),
        allowance_(allowance) {}

  // Walks the subtree below `root`. Nodes that would be expanded at
  // `stop_depth` go to `frontier` instead, when given.
  void walk(const Subtree& root, int stop_depth, PassResult& r, std::vector<Subtree>* frontier) {
    struct Frame {
      Matrix product;
      double log_scale;
      Letter next;
    };
    const auto m = static_cast<Letter>(set_.size());
    std::vector<Letter> letters = root.letters;
    std::vector<Frame> stack;
    stack.push_back({root.product, root.log_scale, 0});
    while (!stack.empty()) {
      if (abort_.load(std::memory_order_relaxed)) {
        r.aborted = true;
        return;
      }
      Frame& top = stack.back();
      if (top.next == m) {
        stack.pop_back();
        if (!stack.empty()) letters.pop_back();
        continue;
      }
      const Letter l = top.next++;
      Matrix child = top.product * set_[l];
      double log_scale = top.log_scale;
      letters.push_back(l);
      const bool expand = visit(letters, child, log_scale, r);
      if (expand && frontier && static_cast<int>(letters.size()) == stop_depth) {
        frontier->push_back({letters, std::move(child), log_scale});
        letters.pop_back();
      } else if (expand) {
        stack.push_back({std::move(child), log_scale, 0});
      } else {
        letters.pop_back();
      }
    }
  }

 private:
  // Normalizes `product` in place and folds its norm into `log_scale`.
  // Returns true when the node's children must be explored.
  bool visit(const std::vector<Letter>& letters, Matrix& product, double& log_scale, PassResult& r) {
    ++r.nodes;
    if (counter_.fetch_add(1, std::memory_order_relaxed) + 1 > allowance_)
      abort_.store(true, std::memory_order_relaxed);

    const std::size_t k = letters.size();
    const bool fresh = static_cast<int>(k) > evaluated_depth_;
    const double nrm = matrix_norm(product, opts_.norm);
    if (!(nrm > 0.0)) {
      if (fresh) offer(letters, 0.0, r);
      return false;
    }
    log_scale += std::log(nrm);
    product /= nrm;
    const double root_norm = std::exp(log_scale / static_cast<double>(k));

    if (fresh) {
      const double rho = spectral_radius(product);
      offer(letters, rho < kDenormalGuard ? 0.0 : std::exp((log_scale + std::log(rho)) / static_cast<double>(k)),
            r);
    }
    if (root_norm <= threshold_ || static_cast<int>(k) == depth_) {
      r.leaf_max = std::max(r.leaf_max, root_norm);
      return false;
    }
    return true;
  }

  static void offer(const std::vector<Letter>& letters, double value, PassResult& r) {
    Candidate c{value, letters};
    if (better(c, r.best)) r.best = std::move(c);
  }

  const MatrixSet& set_;
  const RefineOptions& opts_;
  int depth_;
  int evaluated_depth_;
  double threshold_;
  std::uint64_t allowance_;
  std::atomic<std::uint64_t> counter_{0};
  std::atomic<bool> abort_{false};
};

// Shallow prefix depth at which subtrees are split off for workers. Depends
// only on the generator count, never on the worker count.
int split_depth(std::size_t generators, int depth) {
  int p = 1;
  std::uint64_t tasks = generators;
  while (tasks < 64 && p < depth && generators > 1) {
    tasks *= generators;
    ++p;
  }
  return std::min(p, depth);
}

PassResult run_pass(const MatrixSet& set, const RefineOptions& opts, int depth, int evaluated_depth,
                    double threshold, std::uint64_t allowance, unsigned workers) {
  Pass pass(set, opts, depth, evaluated_depth, threshold, allowance);
  const int p = split_depth(set.size(), depth);

  PassResult shallow;
  std::vector<Subtree> frontier;
  const Subtree root{{}, identity(set.dim()), 0.0};
  pass.walk(root, p, shallow, &frontier);
  if (shallow.aborted || frontier.empty()) return shallow;

  std::vector<PassResult> parts(frontier.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < frontier.size(); i = next.fetch_add(1))
      pass.walk(frontier[i], depth, parts[i], nullptr);
  };
  const unsigned n_threads = std::min<std::size_t>(workers, frontier.size());
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }

  PassResult total = std::move(shallow);
  for (PassResult& part : parts) {
    total.nodes += part.nodes;
    total.aborted = total.aborted || part.aborted;
    total.leaf_max = std::max(total.leaf_max, part.leaf_max);
    if (better(part.best, total.best)) total.best = std::move(part.best);
  }
  return total;
}

int next_depth(int d) { return std::max(d + 1, d + d / 2); }

}  // namespace

WitnessedValue lower_bound_r(const MatrixSet& set, int n, const EnumerationLimits& limits) {
  require_enumerable(set, n, limits);
  Candidate best;
  for_each_word(set, n, [&](const std::vector<Letter>& letters, const Matrix& p) {
    Candidate c{root_of(spectral_radius(p), letters.size()), letters};
    if (better(c, best)) best = std::move(c);
  });
  return {best.value, ProductWord{std::move(best.word)}};
}

double upper_bound(const MatrixSet& set, int n, const EnumerationLimits& limits) {
  require_enumerable(set, n, limits);
  std::vector<double> level_norm(static_cast<std::size_t>(n) + 1, 0.0);
  for_each_word(set, n, [&](const std::vector<Letter>& letters, const Matrix& p) {
    double& slot = level_norm[letters.size()];
    slot = std::max(slot, matrix_norm(p, limits.norm));
  });
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n; ++k) best = std::min(best, root_of(level_norm[static_cast<std::size_t>(k)], static_cast<std::size_t>(k)));
  return best;
}

BoundsReport refine(const MatrixSet& set, const RefineOptions& opts) {
  check_caps(set, opts);
  const unsigned workers = resolve_workers(opts.workers);

  BoundsReport report;
  if (set.size() == 1) {
    // Gelfand: a single matrix has rho(M) = rho(a), while ||a^n||^(1/n)
    // approaches it only like C^(1/n) for non-normal a.
    const double rho = spectral_radius(set[0]);
    report.lower = rho * (1 - kRoundingRel);
    report.upper = rho * (1 + kRoundingRel);
    report.lower_witness = ProductWord{{0}};
    report.depth_used = 1;
    report.nodes_explored = 1;
    report.converged = report.width() <= opts.width;
    return report;
  }

  report.upper = std::numeric_limits<double>::infinity();
  Candidate lower;
  std::uint64_t used = 0;
  int evaluated = 0;

  for (int depth = 1; depth <= opts.max_depth; depth = next_depth(depth)) {
    const double threshold = std::max(lower.value, 0.0) + opts.width;
    // The first level is always affordable.
    const std::uint64_t allowance =
        depth == 1 ? std::max<std::uint64_t>(set.size(), opts.budget) - used : opts.budget - used;
    PassResult pass = run_pass(set, opts, depth, evaluated, threshold, allowance, workers);
    if (pass.aborted || pass.nodes > allowance) break;

    used += pass.nodes;
    evaluated = depth;
    report.depth_used = depth;
    report.upper = std::min(report.upper, pass.leaf_max);
    if (better(pass.best, lower)) lower = std::move(pass.best);

    if (widened_width(std::max(lower.value, 0.0), report.upper) <= opts.width) {
      report.converged = true;
      break;
    }
    if (used >= opts.budget) break;
  }

  report.nodes_explored = used;
  const double lo = std::max(lower.value, 0.0);
  report.lower_witness = ProductWord{std::move(lower.word)};
  // The raw lower bound can sit a few ulps above the cover bound when both are tight.
  report.upper = std::max(report.upper, lo) * (1 + kRoundingRel);
  report.lower = lo * (1 - kRoundingRel);
  return report;
}

BergerWangReport verify_berger_wang(const MatrixSet& set, double tol, std::uint64_t budget, unsigned workers) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  BergerWangReport out;
  out.bounds = refine(set, tol, budget, workers);
  out.r_lower = out.bounds.lower;
  out.rho_upper = out.bounds.upper;
  out.gap = out.rho_upper - out.r_lower;
  out.pass = out.gap <= tol;
  return out;
}

double interval_distance(double l1, double u1, double l2, double u2) {
  if (u1 < l2) return l2 - u1;
  if (u2 < l1) return l1 - u2;
  return 0.0;
}

MatrixSet perturb(const MatrixSet& set, double eps, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> out;
  out.reserve(set.size());
  for (const Matrix& g : set.generators()) {
    Matrix delta(g.rows(), g.cols());
    for (Eigen::Index j = 0; j < delta.cols(); ++j)
      for (Eigen::Index i = 0; i < delta.rows(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        delta(i, j) = Scalar(re, im);
      }
    const double nrm = op_norm(delta);
    out.push_back(nrm > 0.0 ? Matrix(g + (eps / nrm) * delta) : g);
  }
  return MatrixSet(std::move(out), set.name());
}

std::vector<ContinuityRow> continuity_probe(const MatrixSet& set, const ContinuityOptions& o) {
  if (o.trials < 1) throw Error(Errc::InvalidArgument, "continuity probe needs at least one trial");
  for (double eps : o.eps_schedule)
    if (!(eps >= 0.0) || !std::isfinite(eps))
      throw Error(Errc::InvalidArgument, "perturbation sizes must be finite and nonnegative");

  const BoundsReport base = refine(set, o.width, o.budget, o.workers);
  std::mt19937_64 rng(o.seed);
  std::vector<ContinuityRow> rows;
  rows.reserve(o.eps_schedule.size());
  for (double eps : o.eps_schedule) {
    ContinuityRow row{eps, 0.0, base.converged};
    for (int t = 0; t < o.trials; ++t) {
      const BoundsReport r = refine(perturb(set, eps, rng), o.width, o.budget, o.workers);
      row.complete = row.complete && r.converged;
      row.max_dev = std::max(row.max_dev, interval_distance(base.lower, base.upper, r.lower, r.upper));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jsr
