#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lamod/cli.hpp"

using namespace lamod;
namespace cli = lamod::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("lambda-classify");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("module spec parsing") {
  LambdaModule m = cli::parse_module_spec("2^2^1 x 2^1^1 ; 3,0 ; 1,1");
  CHECK(m.shape.str() == "Z4 x Z2");
  CHECK(m.action.at(0, 0) == 3);
  CHECK(m.action.at(1, 0) == 1);

  LambdaModule c = cli::parse_module_spec("3^1^1 ; 2");
  CHECK(c.shape.str() == "Z3");
  CHECK(c.action.at(0, 0) == 2);

  CHECK(cli::parse_module_spec("0").order() == 1);

  CHECK_THROWS_AS(cli::parse_module_spec("2^2^1 ; 2"), std::invalid_argument);  // not a unit
  CHECK_THROWS_AS(cli::parse_module_spec("2^2^1 x 3^1^1 ; 1,0 ; 0,1"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_module_spec("2^2^1 ; 1, 0"), std::invalid_argument);  // row arity
  CHECK_THROWS_AS(cli::parse_module_spec("banana"), std::invalid_argument);
}

TEST_CASE("classify output is deterministic and matches the golden files") {
  for (i64 p : {2, 3})
    for (int n = 0; n <= 4; ++n) {
      std::string got = cli::render_classify(p, n, "json");
      CHECK(got == cli::render_classify(p, n, "json"));
      std::string path = std::string(LAMOD_GOLDEN_DIR) + "/classify_p" + std::to_string(p) +
                         "_n" + std::to_string(n) + ".json";
      CHECK(got == read_file(path));
    }
}

TEST_CASE("classify csv has the frozen column set") {
  std::string csv = cli::render_classify(2, 2, "csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "p,n,shape,family,params,matrix,image_order");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("cli classify command") {
  RunResult r = run_cli({"classify", "--p", "2", "--n", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"grand_total\": 5") != std::string::npos);

  RunResult bad = run_cli({"classify", "--p", "4", "--n", "2"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("prime") != std::string::npos);

  RunResult bad_n = run_cli({"classify", "--p", "2", "--n", "7"});
  CHECK(bad_n.code == cli::kExitUsage);
}

TEST_CASE("cli quandles command") {
  RunResult r = run_cli({"quandles", "--p", "2", "--n", "1"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"count\": 1") != std::string::npos);

  RunResult conn = run_cli({"quandles", "--p", "3", "--n", "2", "--connected"});
  CHECK(conn.code == cli::kExitOk);
  CHECK(conn.out.find("\"count\": 8") != std::string::npos);

  RunResult tbl = run_cli({"quandles", "--p", "2", "--n", "2", "--table"});
  CHECK(tbl.out.find("\"table\"") != std::string::npos);
}

TEST_CASE("cli verify command") {
  RunResult r = run_cli({"verify", "--p", "2", "--n", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"passed\": true") != std::string::npos);

  RunResult r0 = run_cli({"verify", "--p", "2", "--n", "0"});
  CHECK(r0.code == cli::kExitOk);
}

TEST_CASE("cli extend command") {
  RunResult r = run_cli({"extend", "--module", "2^1^1 ; 1", "--target-exponent", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"image_equals_input\": true") != std::string::npos);
  CHECK(r.out.find("\"index\": 2") != std::string::npos);

  RunResult same = run_cli({"extend", "--module", "3^1^1 ; 2", "--target-exponent", "1"});
  CHECK(same.code == cli::kExitOk);
  CHECK(same.out.find("\"index\": 1") != std::string::npos);

  RunResult bad = run_cli({"extend", "--module", "2^1^1 ; 1", "--target-exponent", "1"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("2i - j") != std::string::npos);
}

TEST_CASE("cli isomorphic command and exit codes") {
  RunResult t = run_cli({"isomorphic", "--modules", "2^2^1 x 2^1^1 ; 3,0 ; 1,1",
                         "2^2^1 x 2^1^1 ; 1,0 ; 1,1"});
  CHECK(t.code == cli::kExitOk);
  CHECK(t.out.find("\"result\": true") != std::string::npos);
  CHECK(t.out.find("\"conjugator\"") != std::string::npos);

  RunResult f = run_cli({"isomorphic", "--modules", "3^2^1 ; 4", "3^2^1 ; 7"});
  CHECK(f.code == cli::kExitFalse);
  CHECK(f.out.find("\"result\": false") != std::string::npos);

  RunResult q = run_cli({"isomorphic", "--quandles", "2^2^1 ; 1", "2^1^2 ; 1,0 ; 0,1"});
  CHECK(q.code == cli::kExitOk);

  RunResult usage = run_cli({"isomorphic", "2^1^1 ; 1", "2^1^1 ; 1"});
  CHECK(usage.code == cli::kExitUsage);
}

TEST_CASE("budget env var produces the distinct budget exit code") {
  setenv("LAMBDA_CLASSIFY_BUDGET", "2", 1);
  RunResult r = run_cli({"isomorphic", "--modules", "2^2^1 x 2^1^1 ; 3,0 ; 1,1",
                         "2^2^1 x 2^1^1 ; 1,0 ; 1,1"});
  unsetenv("LAMBDA_CLASSIFY_BUDGET");
  CHECK(r.code == cli::kExitBudget);
  CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("built binary runs end to end") {
  // One smoke test through the real executable.
  std::string cmd = std::string(LAMOD_CLI_BINARY) + " classify --p 2 --n 1 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[256];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  int status = pclose(pipe);
  CHECK(status == 0);
  CHECK(out == cli::render_classify(2, 1, "json"));
}
