#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jsr/cli.hpp"
#include "jsr/io.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace jsr;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(JSR_DATA_DIR) + "/" + name; }

struct Proc {
  int status = -1;
  std::string out;
  std::string err;
};

// Runs the installed binary; stderr goes through a temp file.
Proc sh(const std::string& args, const std::string& env = {}) {
  const std::string err_path = "test_cli_stderr.txt";
  const std::string cmd = env + " " + std::string(JSR_CLI_PATH) + " " + args + " 2>" + err_path;
  Proc p;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  const int st = pclose(f);
  p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  p.err = ss.str();
  return p;
}

cli::RunConfig json_config(const std::string& command, const std::string& file) {
  cli::RunConfig c;
  c.command = command;
  c.input_path = data(file);
  c.format = cli::Format::Json;
  c.timing = false;
  return c;
}

}  // namespace

TEST_CASE("parse_matrix_set reads the documented format") {
  const MatrixSet s = parse_matrix_set(R"({"dim":2,"matrices":[{"re":[[1,1],[0,1]]},{"re":[[1,0],[1,1]]}]})");
  CHECK(s.size() == 2);
  CHECK(s.dim() == 2);
  CHECK(s[0].isApprox(from_rows({{1, 1}, {0, 1}})));
  CHECK(s[1].imag().norm() == 0.0);

  const MatrixSet c = parse_matrix_set(R"({"dim":1,"matrices":[{"re":[[1]],"im":[[-2]]}],"name":"c"})");
  CHECK(c[0](0, 0) == Scalar(1.0, -2.0));
  CHECK(c.name() == "c");
}

TEST_CASE("parse_matrix_set errors") {
  try {
    (void)parse_matrix_set(R"({"dim":2,"matrices":[{"re":[[1,1],[0,1]]},{"re":[[1,0],[1]]}]})");
    FAIL("expected ShapeError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ShapeError);
    CHECK(std::string(e.what()).find("matrix 1") != std::string::npos);
  }
  try {
    (void)parse_matrix_set("{\"dim\":2,\n \"matrices\": [}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_matrix_set(R"({"matrices":[]})"), Error);
  CHECK_THROWS_AS((void)parse_matrix_set(R"({"dim":2,"matrices":[{"re":[[1,"x"],[0,1]]}]})"), Error);
  CHECK_THROWS_AS((void)parse_matrix_set(R"({"dim":2,"matrices":[{"re":[[1,0],[0,1]],"im":[[1]]}]})"), Error);
  try {
    (void)load_matrix_set(data("does_not_exist.json"));
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IoError);
  }
}

TEST_CASE("sha256_hex matches a known digest") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("run: verify-bw on the golden pair") {
  auto c = json_config("verify-bw", "pair.json");
  c.tol = 0.02;
  const auto r = cli::run(c);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.report);
  CHECK(j["status"] == "pass");
  CHECK(j["result"]["gap"].get<double>() <= 0.02);
  CHECK(j["input"]["generators"] == 2);
  CHECK(j["input"]["sha256"].get<std::string>() == sha256_hex(read_file(data("pair.json"))));
  CHECK_FALSE(j.contains("wall_time_s"));
}

TEST_CASE("run: radical and bounds examples") {
  const json rad = json::parse(cli::run(json_config("radical", "ut2.json")).report);
  CHECK(rad["result"]["radical_dim"] == 1);
  CHECK(rad["result"]["algebra_dim"] == 3);

  auto b = json_config("bounds", "nilp.json");
  b.depth = 3;
  const auto r = cli::run(b);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.report);
  CHECK(j["result"]["lower"].get<double>() == 0.0);
  CHECK(j["result"]["upper"].get<double>() == 0.0);
}

TEST_CASE("run: every command produces a report") {
  for (const char* cmd : {"bounds", "refine", "verify-bw", "lift-check", "radical", "inessential", "chain", "continuity"}) {
    auto c = json_config(cmd, "diag.json");
    c.trials = 3;
    const auto r = cli::run(c);
    CAPTURE(cmd);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.report)["command"] == cmd);
  }
}

TEST_CASE("run: criterion misses exit with 2") {
  auto c = json_config("refine", "ess.json");
  c.width = 1e-9;
  c.budget = 1000;
  const auto r = cli::run(c);
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.report)["status"] == "not_converged");
}

TEST_CASE("run: errors leave the report empty") {
  auto bad = json_config("bounds", "missing.json");
  auto r = cli::run(bad);
  CHECK(r.exit_code == 1);
  CHECK(r.report.empty());
  CHECK(r.diagnostic.find("IoError") != std::string::npos);

  auto cmd = json_config("frobnicate", "pair.json");
  CHECK(cli::run(cmd).exit_code == 1);

  auto deep = json_config("bounds", "pair.json");
  deep.depth = 30;
  r = cli::run(deep);
  CHECK(r.exit_code == 1);
  CHECK(r.diagnostic.find("BudgetExceeded") != std::string::npos);
}

TEST_CASE("run: text format renders key lines") {
  auto c = json_config("radical", "ut2.json");
  c.format = cli::Format::Text;
  const auto r = cli::run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("radical_dim") != std::string::npos);
  CHECK(r.report.find('{') == std::string::npos);
}

TEST_CASE("binary: exit codes and streams") {
  const Proc ok = sh("verify-bw " + data("pair.json") + " --tol 0.02 --budget 1000000 --format json --no-timing");
  CHECK(ok.status == 0);
  CHECK(json::parse(ok.out)["status"] == "pass");

  const Proc err = sh("bounds " + data("missing.json"));
  CHECK(err.status == 1);
  CHECK(err.out.empty());
  CHECK_FALSE(err.err.empty());

  const Proc usage = sh("bounds " + data("pair.json") + " --format yaml");
  CHECK(usage.status == 1);
  CHECK(usage.out.empty());

  const Proc miss = sh("refine " + data("ess.json") + " --width 1e-9 --budget 1000 --format json");
  CHECK(miss.status == 2);
  CHECK(json::parse(miss.out).contains("wall_time_s"));
}

TEST_CASE("binary: worker count does not change the report") {
  const std::string args = "inessential " + data("ess.json") + " --format json --no-timing";
  const Proc a = sh(args + " --workers 1");
  const Proc b = sh(args, "JSR_WORKERS=8");
  const Proc c = sh(args + " --workers 2", "JSR_WORKERS=8");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("binary: caps can be lowered but not raised") {
  const Proc low = sh("bounds " + data("pair.json") + " --max-dim 1");
  CHECK(low.status == 1);
  CHECK(low.out.empty());
  const Proc high = sh("bounds " + data("pair.json") + " --max-generators 100");
  CHECK(high.status == 1);
}
