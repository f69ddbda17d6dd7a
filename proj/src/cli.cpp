#include "jsr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "jsr/algebra.hpp"
#include "jsr/io.hpp"
#include "jsr/lift.hpp"

#ifndef JSR_VERSION
#define JSR_VERSION "0.0.0"
#endif

namespace jsr::cli {
namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kCommands{"bounds", "refine",      "verify-bw", "lift-check",
                                         "radical", "inessential", "chain",     "continuity"};

Json word_json(const ProductWord& w) { return Json(w.letters); }

Json bounds_json(const BoundsReport& r) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["lower_witness"] = word_json(r.lower_witness);
  j["depth_used"] = r.depth_used;
  j["nodes_explored"] = r.nodes_explored;
  j["converged"] = r.converged;
  return j;
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw Error(Errc::InvalidArgument, "unknown command '" + c.command + "'");
  if (!(c.width > 0.0)) throw Error(Errc::InvalidArgument, "--width must be positive");
  if (!(c.tol > 0.0)) throw Error(Errc::InvalidArgument, "--tol must be positive");
  if (c.budget == 0) throw Error(Errc::InvalidArgument, "--budget must be positive");
  if (c.depth < 0) throw Error(Errc::InvalidArgument, "--depth must be positive");
  if (c.trials < 1) throw Error(Errc::InvalidArgument, "--trials must be positive");
  if (c.eps.empty()) throw Error(Errc::InvalidArgument, "--eps needs at least one value");
  for (double e : c.eps)
    if (!(e >= 0.0)) throw Error(Errc::InvalidArgument, "--eps values must be nonnegative");
  if (c.max_dim < 1 || c.max_dim > kMaxDim || c.max_generators < 1 || c.max_generators > kMaxGenerators ||
      c.max_words < 1 || c.max_words > kMaxWords)
    throw Error(Errc::InvalidArgument, "caps can only be lowered from their defaults");
}

struct Outcome {
  Json result;
  bool ok = true;
  std::string status;
};

Outcome run_bounds(const MatrixSet& set, const RunConfig& c) {
  const int depth = c.depth > 0 ? c.depth : 6;
  const EnumerationLimits limits{c.max_words};
  Outcome o;
  Json levels = Json::array();
  WitnessedValue lower;
  double upper = 0.0;
  for (int k = 1; k <= depth; ++k) {
    lower = lower_bound_r(set, k, limits);
    upper = upper_bound(set, k, limits);
    levels.push_back({{"k", k}, {"lower", lower.value}, {"upper", upper}});
  }
  o.result["depth"] = depth;
  o.result["lower"] = lower.value;
  o.result["lower_witness"] = word_json(lower.witness);
  o.result["upper"] = upper;
  o.result["levels"] = levels;
  o.status = "ok";
  return o;
}

RefineOptions refine_options(const RunConfig& c, double width) {
  RefineOptions r;
  r.width = width;
  r.budget = std::min(c.budget, c.max_words);
  r.workers = c.workers;
  r.max_dim = c.max_dim;
  return r;
}

Outcome run_refine(const MatrixSet& set, const RunConfig& c) {
  const BoundsReport r = refine(set, refine_options(c, c.width));
  Outcome o{bounds_json(r), r.converged, r.converged ? "converged" : "not_converged"};
  o.result["width"] = r.width();
  return o;
}

Outcome run_verify_bw(const MatrixSet& set, const RunConfig& c) {
  const BergerWangReport r = verify_berger_wang(set, c.tol, std::min(c.budget, c.max_words), c.workers);
  Outcome o;
  o.result["r_lower"] = r.r_lower;
  o.result["rho_upper"] = r.rho_upper;
  o.result["gap"] = r.gap;
  o.result["pass"] = r.pass;
  o.result["bounds"] = bounds_json(r.bounds);
  o.ok = r.pass;
  o.status = r.pass ? "pass" : "fail";
  return o;
}

Outcome run_lift_check(const MatrixSet& set, const RunConfig& c) {
  PassIdentityOptions po;
  po.depth = c.depth > 0 ? c.depth : 4;
  po.budget = std::min(c.budget, c.max_words);
  po.width = c.width;
  po.workers = c.workers;
  const PassIdentityReport r = check_pass_identities(set, po);
  Outcome o;
  o.result["depth"] = po.depth;
  o.result["rho_sq_gap"] = r.rho_sq_gap;
  o.result["r_exact_gap"] = r.r_exact_gap;
  o.result["pass"] = r.pass;
  o.result["set_bounds"] = bounds_json(r.set_bounds);
  o.result["lifted_bounds"] = bounds_json(r.lifted_bounds);
  o.ok = r.pass;
  o.status = r.pass ? "pass" : "fail";
  return o;
}

Outcome run_radical(const MatrixSet& set, const RunConfig&) {
  const FDAlgebra algebra = generated_subalgebra(set);
  const Ideal rad = jacobson_radical(algebra);
  const QuotientAlgebra q = quotient(algebra, rad);
  const Ideal quotient_rad = jacobson_radical(q.as_algebra());
  Outcome o;
  o.result["algebra_dim"] = algebra.dim();
  o.result["unital"] = algebra.unital();
  o.result["radical_dim"] = rad.dim();
  const std::optional<int> degree = rad.nilpotency_degree();
  o.result["radical_nil_degree"] = degree ? Json(*degree) : Json(nullptr);
  o.result["quotient_dim"] = q.dim();
  o.result["quotient_rep_dim"] = q.rep_dim();
  o.result["quotient_radical_dim"] = quotient_rad.dim();
  o.status = "ok";
  return o;
}

Outcome run_inessential(const MatrixSet& set, const RunConfig& c) {
  InessentialOptions io;
  io.width = c.width;
  io.budget = std::min(c.budget, c.max_words);
  io.workers = c.workers;
  const InessentialReport r = check_inessential(set, io);
  Outcome o;
  o.result["algebra_dim"] = r.algebra_dim;
  o.result["radical_dim"] = r.radical_dim;
  o.result["quotient_rep_dim"] = r.rep_dim;
  o.result["rho_full"] = bounds_json(r.full);
  o.result["rho_quotient"] = bounds_json(r.quotient);
  o.result["gap"] = r.gap;
  o.result["pass"] = r.pass;
  o.ok = r.pass;
  o.status = r.pass ? "pass" : "fail";
  return o;
}

Outcome run_chain(const MatrixSet& set, const RunConfig& c) {
  const FDAlgebra algebra = generated_subalgebra(set);
  ChainOptions co;
  co.depth = c.depth;
  co.width = c.width;
  co.budget = std::min(c.budget, c.max_words);
  co.workers = c.workers;
  const ChainReport r = ideal_chain_monotonicity(set, radical_power_chain(algebra), co);
  Outcome o;
  Json rows = Json::array();
  for (const ChainRow& row : r.rows)
    rows.push_back({{"ideal_dim", row.ideal_dim}, {"rep_dim", row.rep_dim}, {"lower", row.lower}, {"upper", row.upper}});
  o.result["depth"] = r.depth;
  o.result["rows"] = rows;
  o.result["monotone"] = r.monotone;
  o.result["final_direct"] = bounds_json(r.final_direct);
  o.result["final_consistent"] = r.final_consistent;
  o.result["pass"] = r.pass;
  o.ok = r.pass;
  o.status = r.pass ? "pass" : "fail";
  return o;
}

Outcome run_continuity(const MatrixSet& set, const RunConfig& c) {
  ContinuityOptions co;
  co.eps_schedule = c.eps;
  co.trials = c.trials;
  co.seed = c.seed;
  co.width = c.width;
  co.budget = std::min(c.budget, c.max_words);
  co.workers = c.workers;
  const std::vector<ContinuityRow> rows = continuity_probe(set, co);
  Outcome o;
  Json table = Json::array();
  bool complete = true;
  for (const ContinuityRow& r : rows) {
    table.push_back({{"eps", r.eps}, {"max_dev", r.max_dev}, {"complete", r.complete}});
    complete = complete && r.complete;
  }
  o.result["rows"] = table;
  o.result["complete"] = complete;
  o.ok = complete;
  o.status = complete ? "complete" : "incomplete";
  return o;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(12) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

// Scalars become "key  value" lines; arrays of objects become aligned tables.
void render_text(const Json& obj, const std::string& prefix, std::ostream& os) {
  std::size_t key_width = 0;
  for (const auto& [k, v] : obj.items()) key_width = std::max(key_width, prefix.size() + k.size());
  for (const auto& [k, v] : obj.items()) {
    const std::string key = prefix + k;
    if (v.is_object()) {
      render_text(v, key + ".", os);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << key << ":\n";
      std::vector<std::string> cols;
      for (const auto& [ck, cv] : v.front().items()) cols.push_back(ck);
      std::vector<std::size_t> widths;
      for (const std::string& col : cols) {
        std::size_t w = col.size();
        for (const Json& row : v) w = std::max(w, scalar_text(row[col]).size());
        widths.push_back(w);
      }
      for (std::size_t i = 0; i < cols.size(); ++i) os << "  " << std::setw(static_cast<int>(widths[i])) << cols[i];
      os << '\n';
      for (const Json& row : v) {
        for (std::size_t i = 0; i < cols.size(); ++i)
          os << "  " << std::setw(static_cast<int>(widths[i])) << scalar_text(row[cols[i]]);
        os << '\n';
      }
    } else {
      os << std::left << std::setw(static_cast<int>(key_width + 2)) << key << std::right << scalar_text(v) << '\n';
    }
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult out;
  try {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    const std::string bytes = read_file(config.input_path);
    const MatrixSet set = parse_matrix_set(bytes);
    if (set.dim() > config.max_dim)
      throw Error(Errc::DimensionOverflow, "dimension " + std::to_string(set.dim()) + " exceeds cap " +
                                               std::to_string(config.max_dim));
    if (static_cast<long>(set.size()) > config.max_generators)
      throw Error(Errc::DimensionOverflow, std::to_string(set.size()) + " generators exceed cap " +
                                               std::to_string(config.max_generators));

    Outcome o;
    const std::string& cmd = config.command;
    if (cmd == "bounds") o = run_bounds(set, config);
    else if (cmd == "refine") o = run_refine(set, config);
    else if (cmd == "verify-bw") o = run_verify_bw(set, config);
    else if (cmd == "lift-check") o = run_lift_check(set, config);
    else if (cmd == "radical") o = run_radical(set, config);
    else if (cmd == "inessential") o = run_inessential(set, config);
    else if (cmd == "chain") o = run_chain(set, config);
    else o = run_continuity(set, config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const int exit_code = o.ok ? 0 : 2;
    Json report;
    report["tool"] = "jsr";
    report["version"] = JSR_VERSION;
    report["command"] = cmd;
    report["input"] = {{"path", config.input_path},
                       {"sha256", sha256_hex(bytes)},
                       {"name", set.name()},
                       {"dim", set.dim()},
                       {"generators", set.size()}};
    report["params"] = {{"depth", config.depth}, {"width", config.width},   {"budget", config.budget},
                        {"tol", config.tol},     {"eps", config.eps},       {"trials", config.trials},
                        {"seed", config.seed},   {"max_words", config.max_words}};
    report["result"] = o.result;
    report["status"] = o.status;
    report["exit_code"] = exit_code;
    if (config.timing) report["wall_time_s"] = seconds;

    std::ostringstream os;
    if (config.format == Format::Json) {
      os << report.dump() << '\n';
    } else {
      Json head;
      head["command"] = cmd;
      head["input"] = config.input_path;
      head["dim"] = set.dim();
      head["generators"] = set.size();
      head["status"] = o.status;
      render_text(head, "", os);
      render_text(o.result, "", os);
      if (config.timing) os << "wall_time_s  " << std::setprecision(4) << seconds << '\n';
    }
    out.report = os.str();
    out.exit_code = exit_code;
  } catch (const std::exception& e) {
    out.report.clear();
    out.diagnostic = e.what();
    out.exit_code = 1;
  }
  return out;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint spectral radius bounds and radical-invariance checks for finite matrix sets", "jsr"};
  RunConfig c;
  std::string format = "text";
  std::optional<unsigned> workers;
  bool no_timing = false;

  app.add_option("command", c.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("input", c.input_path, "Matrix set JSON file")->required();
  app.add_option("--depth", c.depth, "Enumeration depth (bounds, lift-check, chain)");
  app.add_option("--width", c.width, "Target interval width for refine");
  app.add_option("--budget", c.budget, "Budget in words evaluated");
  app.add_option("--tol", c.tol, "Tolerance for verify-bw");
  app.add_option("--eps", c.eps, "Perturbation sizes for continuity")->delimiter(',');
  app.add_option("--trials", c.trials, "Trials per perturbation size");
  app.add_option("--seed", c.seed, "Seed for continuity perturbations");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--workers", workers, "Worker threads (default: JSR_WORKERS or all cores)");
  app.add_flag("--no-timing", no_timing, "Omit wall time from the report");
  app.add_option("--max-dim", c.max_dim, "Dimension cap (at most 64)");
  app.add_option("--max-generators", c.max_generators, "Generator cap (at most 8)");
  app.add_option("--max-words", c.max_words, "Enumeration cap (at most 1e7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "jsr: " << e.what() << '\n';
    return 1;
  }

  c.format = format == "json" ? Format::Json : Format::Text;
  c.timing = !no_timing;
  if (workers) {
    c.workers = *workers;
  } else if (const char* env = std::getenv("JSR_WORKERS")) {
    try {
      c.workers = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      err << "jsr: JSR_WORKERS must be a nonnegative integer\n";
      return 1;
    }
  }

  const RunResult r = run(c);
  if (r.exit_code == 1) {
    err << "jsr: " << r.diagnostic << '\n';
    return 1;
  }
  out << r.report;
  return r.exit_code;
}

}  // namespace jsr::cli
