#ifndef JSR_CLI_HPP
#define JSR_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jsr::cli {

enum class Format { Text, Json };

inline constexpr long kMaxDim = 64;
inline constexpr long kMaxGenerators = 8;
inline constexpr std::uint64_t kMaxWords = 10'000'000;

struct RunConfig {
  /// bounds, refine, verify-bw, lift-check, radical, inessential, chain, continuity
  std::string command;
  std::string input_path;
  int depth = 0;  // 0: per-command default
  double width = 1e-3;
  std::uint64_t budget = 1'000'000;
  double tol = 1e-6;
  std::vector<double> eps{0.1, 0.03, 0.01};
  int trials = 20;
  std::uint64_t seed = 1;
  Format format = Format::Text;
  unsigned workers = 0;
  bool timing = true;
  long max_dim = kMaxDim;
  long max_generators = kMaxGenerators;
  std::uint64_t max_words = kMaxWords;
};

struct RunResult {
  /// 0: passed or converged; 2: valid run that missed its criterion; 1: error.
  int exit_code = 1;
  /// The report stream; empty on error.
  std::string report;
  /// One-line diagnostic on error.
  std::string diagnostic;
};

RunResult run(const RunConfig& config);

/// Parses argv, runs, and writes the report to `out`, diagnostics to `err`.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace jsr::cli

#endif  // JSR_CLI_HPP
