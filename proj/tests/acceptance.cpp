// Acceptance criteria A1-A9. One PASS/FAIL line per criterion; the exit
// status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "jsr/io.hpp"
#include "jsr/lift.hpp"
#include "test_support.hpp"

using namespace jsr;
namespace oracle = jsr::test::oracle;

namespace {

const double kPhi = 1.6180339887498949;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string data(const std::string& name) { return std::string(JSR_DATA_DIR) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<MatrixSet> a2_inputs() {
  std::mt19937_64 rng(2001);
  std::vector<MatrixSet> out;
  for (int i = 0; i < 50; ++i) out.push_back(test::random_set(rng, 3, 3));
  return out;
}

Outcome a1() {
  Outcome o;
  const std::vector<Matrix> gens{from_rows({{1, 1}, {0, 1}}), from_rows({{1, 0}, {1, 1}})};
  const auto brute = oracle::brute_sandwich_2x2(gens, 12);
  o.require(brute.lower <= kPhi + 1e-12 && kPhi <= brute.upper + 1e-12, "oracle sandwich misses phi");

  const auto t0 = std::chrono::steady_clock::now();
  const BoundsReport r = refine(MatrixSet(gens), 0.02, 1'000'000);
  const double secs = seconds_since(t0);
  o.require(r.converged, "not converged");
  o.require(r.lower <= kPhi && kPhi <= r.upper, "interval misses phi");
  o.require(r.lower >= kPhi - 1e-9, "lower too small");
  o.require(r.width() <= 0.02, "too wide");
  o.require(secs < 60.0, "too slow");
  o.detail << "interval [" << r.lower << ", " << r.upper << "], depth-12 oracle [" << brute.lower << ", "
           << brute.upper << "], " << secs << " s";
  return o;
}

Outcome a2() {
  Outcome o;
  double worst = 0.0;
  int passed = 0;
  for (const MatrixSet& s : a2_inputs()) {
    PassIdentityOptions po;
    po.depth = 4;
    const auto r = check_pass_identities(s, po);
    worst = std::max(worst, r.r_exact_gap);
    o.require(r.pass, "check_pass_identities failed");
    o.require(r.r_exact_gap <= 1e-7, "r_k gap above 1e-7");
    if (r.pass) ++passed;
  }
  o.detail << passed << "/50 sets, worst relative r_k gap " << worst;
  return o;
}

Outcome a3() {
  Outcome o;
  std::mt19937_64 rng(3001);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index d = dim(rng);
    const Matrix a = test::random_complex(rng, d), b = test::random_complex(rng, d);
    const double scale = std::pow(oracle::svd_norm(a), 2) * std::pow(oracle::svd_norm(b), 2);
    const double res = check_w_product_identity(a, b);
    worst = std::max(worst, res / scale);
    o.require(res <= 1e-10 * scale, "residual above tolerance");
  }
  o.detail << "100 pairs, worst scaled residual " << worst;
  return o;
}

Outcome a4() {
  Outcome o;
  std::mt19937_64 rng(4001);
  int passed = 0;
  for (int i = 0; i < 50; ++i) {
    const auto r = check_inessential(test::random_block_upper(rng, 4, 3));
    o.require(r.pass, "random block-upper set failed");
    if (r.pass) ++passed;
  }

  // Oracle: every product of the diagonal parts to depth 6.
  const std::vector<Matrix> diag_parts{diag({2.0, 1.0}), diag({1.0, 3.0})};
  const auto brute = oracle::brute_sandwich_2x2(diag_parts, 6);
  o.require(std::abs(brute.lower - 3.0) <= 1e-12 && std::abs(brute.upper - 3.0) <= 1e-12, "oracle is not 3");
  const MatrixSet hand({from_rows({{2, 5}, {0, 1}}), from_rows({{1, 7}, {0, 3}})});
  const auto r = check_inessential(hand);
  o.require(r.pass, "hand example failed");
  o.require(r.full.lower <= brute.lower && brute.lower <= r.full.upper, "full interval misses 3");
  o.require(r.quotient.lower <= brute.lower && brute.lower <= r.quotient.upper, "quotient interval misses 3");
  o.detail << passed << "/50 random sets; hand example full [" << r.full.lower << ", " << r.full.upper
           << "], quotient [" << r.quotient.lower << ", " << r.quotient.upper << "]";
  return o;
}

Outcome a5() {
  Outcome o;
  std::mt19937_64 rng(5001);
  std::normal_distribution<double> g;
  int members = 0, non_members = 0;
  for (int i = 0; i < 30; ++i) {
    const FDAlgebra a = generated_subalgebra(test::random_hidden_block_upper(rng, 4, 3));
    const Ideal rad = jacobson_radical(a);
    for (Eigen::Index c = 0; c < rad.dim(); ++c) {
      o.require(rcq_membership(a, rad.basis().col(c)).member, "radical element rejected");
      ++members;
    }
    if (rad.dim() < a.dim()) {
      for (int k = 0; k < 10; ++k) {
        Vector x(a.dim());
        for (Eigen::Index j = 0; j < a.dim(); ++j) x(j) = Scalar(g(rng), g(rng));
        if (rad.contains(x)) continue;
        o.require(!rcq_membership(a, x).member, "non-radical element accepted");
        ++non_members;
      }
    }
    o.require(jacobson_radical(quotient(a, rad).as_algebra()).dim() == 0, "quotient has a radical");
  }
  o.detail << "30 algebras, " << members << " radical basis elements, " << non_members << " non-radical samples";
  return o;
}

Outcome a6() {
  Outcome o;
  std::mt19937_64 rng(6001);
  int worst_degree = 0;
  for (int i = 0; i < 20; ++i) {
    const MatrixSet s = test::random_strictly_upper(rng, 1, 5, 3);
    const BoundsReport b = refine(s, 1e-12, 100'000);
    o.require(b.upper < 1e-12, "refine did not certify rho = 0");
    const auto r = check_nilpotent_span(s);
    o.require(r.pass, "nilpotent span check failed");
    o.require(r.nil_degree <= s.dim(), "degree above dimension");
    worst_degree = std::max(worst_degree, r.nil_degree);
  }
  o.detail << "20 sets, largest nilpotency degree " << worst_degree;
  return o;
}

Outcome a7() {
  Outcome o;
  int checked = 0;
  for (const MatrixSet& s : a2_inputs()) {
    double prev_lo = 0.0, prev_hi = INFINITY;
    for (int n = 1; n <= 6; ++n) {
      const double lo = lower_bound_r(s, n).value;
      const double hi = upper_bound(s, n);
      o.require(lo >= prev_lo, "lower decreased");
      o.require(hi <= prev_hi, "upper increased");
      o.require(lo <= hi + 1e-9, "lower above upper");
      prev_lo = lo;
      prev_hi = hi;
      ++checked;
    }
  }
  o.detail << checked << " (set, n) pairs";
  return o;
}

Outcome a8() {
  Outcome o;
  const MatrixSet s = load_matrix_set(data("diag.json"));
  ContinuityOptions co;
  co.eps_schedule = {0.1, 0.03, 0.01};
  co.trials = 20;
  co.seed = 8001;
  const auto rows = continuity_probe(s, co);

  // Oracle: replay the same perturbations and bound each with the depth-8
  // brute-force sandwich. The true deviation lies above the oracle distance,
  // and the probe's distance can undershoot it by at most one refine width.
  std::mt19937_64 rng(co.seed);
  const double base = 3.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double oracle_dev = 0.0;
    for (int t = 0; t < co.trials; ++t) {
      const auto b = oracle::brute_sandwich_2x2(perturb(s, co.eps_schedule[i], rng).generators(), 8);
      oracle_dev = std::max(oracle_dev, interval_distance(base, base, b.lower, b.upper));
    }
    o.require(rows[i].complete, "some refine did not converge");
    o.require(rows[i].max_dev + 2 * co.width >= oracle_dev, "probe below oracle");
    if (i > 0) o.require(rows[i].max_dev <= rows[i - 1].max_dev, "max_dev increased");
    o.detail << "eps " << rows[i].eps << ": " << rows[i].max_dev << " (oracle >= " << oracle_dev << "); ";
  }
  o.require(rows[0].max_dev <= 0.15, "max_dev above 0.15 at eps 0.1");
  o.require(rows[2].max_dev <= 0.02, "max_dev above 0.02 at eps 0.01");
  return o;
}

struct Proc {
  int status = -1;
  std::string out;
};

Proc run_cli(const std::string& args) {
  Proc p;
  const std::string cmd = std::string(JSR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  p.status = pclose(f);
  return p;
}

Outcome a9() {
  Outcome o;
  const std::vector<std::string> jobs{
      "refine " + data("pair.json") + " --width 0.02 --budget 1000000 --format json --no-timing",
      "inessential " + data("ess.json") + " --format json --no-timing"};
  for (const std::string& job : jobs) {
    std::string reference;
    int runs = 0;
    for (int workers : {1, 2, 8})
      for (int rep = 0; rep < 3; ++rep) {
        const Proc p = run_cli(job + " --workers " + std::to_string(workers));
        o.require(p.status == 0, "cli exited nonzero");
        o.require(!p.out.empty(), "empty report");
        if (runs++ == 0)
          reference = p.out;
        else
          o.require(p.out == reference, "report bytes differ");
      }
    o.detail << job.substr(0, job.find(' ')) << ": " << runs << " identical runs; ";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::cout << name << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
