#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

// Runs the CLI through the shell; the caller controls stderr via redirects
// in `args`. Captures whatever reaches stdout.
RunResult run_cmd(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run(const std::string& args) {
  return run_cmd(std::string(RUIN_CLI_PATH) + " " + args);
}

RunResult run_with_env(const std::string& env, const std::string& args) {
  return run_cmd("env " + env + " " + std::string(RUIN_CLI_PATH) + " " + args);
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "ruin_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_dist(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream f(p);
  f << content;
  return p;
}

}  // namespace

TEST_CASE("solve emits the documented CSV, bit for bit") {
  fs::path json = write_dist("ex51.json", R"({"pmf": ["1/2", "1/4", "1/4"]})");
  RunResult r = run("solve " + json.string() + " --u-max 6 2>/dev/null");
  CHECK(r.exit_code == 0);
  const std::string golden =
      "u,psi,approx1,approx2,oracle,abs_err_approx1,abs_err_approx2\n"
      "0,0.75,,,0.75,,\n"
      "1,0.5,0.5,0.5,0.5,0,0\n"
      "2,0.25,0.25,0.25,0.25,0,0\n"
      "3,0.125,0.125,0.125,0.125,0,0\n"
      "4,0.0625,0.0625,0.0625,0.0625,0,0\n"
      "5,0.03125,0.03125,0.03125,0.03125,0,0\n"
      "6,0.015625,0.015625,0.015625,0.015625,0,0\n";
  CHECK(r.output == golden);

  // stable across runs
  RunResult again = run("solve " + json.string() + " --u-max 6 2>/dev/null");
  CHECK(again.output == r.output);
}

TEST_CASE("solve reproduces the repeated-root example table") {
  fs::path json = write_dist(
      "ex54.json",
      R"({"pmf": ["1/2","3/7","3/392","145/2744","775/76832","219/268912","67/2151296","1/2151296"]})");
  RunResult r = run("solve " + json.string() + " --u 1,2,4,6,8,10 2>/dev/null");
  CHECK(r.exit_code == 0);
  // exact column rounds to 0.2940, 0.1932, 0.0455, 0.0113, 0.0028, 0.0007
  std::istringstream in(r.output);
  std::string line;
  std::getline(in, line);  // header
  const double want[] = {0.2940, 0.1932, 0.0455, 0.0113, 0.0028, 0.0007};
  for (double w : want) {
    REQUIRE(std::getline(in, line));
    auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
    double psi = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(std::abs(psi - w) <= 5e-5);
  }
}

TEST_CASE("solve accepts an explicit u list and json format") {
  fs::path json = write_dist("ex51.json", R"({"pmf": ["1/2", "1/4", "1/4"]})");
  RunResult r = run("solve " + json.string() + " --u 1,2,4 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("4,0.0625,") != std::string::npos);
  CHECK(r.output.find("\n3,") == std::string::npos);

  r = run("solve " + json.string() + " --u-max 2 --format json 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"z2\": 0.5") != std::string::npos);
  CHECK(r.output.find("\"roots\"") != std::string::npos);
}

TEST_CASE("solve writes the roots table") {
  fs::path json = write_dist("ex51.json", R"({"pmf": ["1/2", "1/4", "1/4"]})");
  fs::path roots = scratch_dir() / "roots.csv";
  fs::remove(roots);
  RunResult r = run("solve " + json.string() + " --u-max 2 --roots-out " +
                    roots.string() + " >/dev/null");
  CHECK(r.exit_code == 0);
  std::ifstream f(roots);
  std::string header;
  std::getline(f, header);
  CHECK(header == "k,z_re,z_im,multiplicity,j,b_re,b_im");
  std::string row;
  std::getline(f, row);
  CHECK(row.substr(0, 4) == "1,1,");
}

TEST_CASE("validation failures exit with code 2 and name the error") {
  fs::path bad = write_dist("bad.json", R"({"pmf": [0.5, 0.2, 0.2]})");
  RunResult r = run("solve " + bad.string() + " 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("SumNotOne") != std::string::npos);

  fs::path heavy = write_dist("heavy.json", R"({"pmf": [0.25, 0.25, 0.5]})");
  r = run("solve " + heavy.string() + " 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("NetProfitViolated") != std::string::npos);
}

TEST_CASE("failed runs leave no partial output file") {
  fs::path bad = write_dist("bad.json", R"({"pmf": [0.5, 0.2, 0.2]})");
  fs::path out = scratch_dir() / "table.csv";
  fs::remove(out);
  RunResult r = run("solve " + bad.string() + " --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("mc output is deterministic per seed and honors the env default") {
  fs::path json = write_dist("ex51.json", R"({"pmf": ["1/2", "1/4", "1/4"]})");
  std::string args = "mc " + json.string() + " --u 0 --paths 20000 --horizon 2000 --seed 42";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("estimate 0.7") != std::string::npos);
  CHECK(a.output.find("half_width_95 ") != std::string::npos);
  CHECK(a.output.find("alive_fraction ") != std::string::npos);

  RunResult c = run_with_env(
      "RUINKIT_SEED=42", "mc " + json.string() + " --u 0 --paths 20000 --horizon 2000");
  CHECK(c.output == a.output);
}

TEST_CASE("approx closed forms") {
  RunResult r = run("approx --geometric 3/5 --u 0,1,2");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "u,value\n0,0.6666666667\n1,0.4444444444\n2,0.2962962963\n");

  r = run("approx --gambler 0.75 --u 2");
  CHECK(r.output.find("2,0.1111111111") != std::string::npos);

  r = run("approx --ab0 0.3 0.2 --u 1");
  CHECK(r.exit_code == 0);

  fs::path json = write_dist("ex51.json", R"({"pmf": ["1/2", "1/4", "1/4"]})");
  r = run("approx --dist " + json.string() + " --u 1,2");
  CHECK(r.output == "u,value\n1,0.5\n2,0.25\n");

  r = run("approx --geometric 0.5 --u 1 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("NetProfitViolated") != std::string::npos);

  r = run("approx --geometric 0.6 --gambler 0.7 2>&1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("paper example suite passes and emits plot data") {
  fs::path plots = scratch_dir() / "plots";
  fs::remove_all(plots);
  RunResult r = run("paper-examples --emit-plots " + plots.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  for (const char* name : {"ex51.csv", "ex52.csv", "ex53.csv", "ex54.csv", "ex55.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(plots / name));
  }
  std::ifstream f(plots / "ex51.csv");
  std::string header, row0, row1;
  std::getline(f, header);
  std::getline(f, row0);
  std::getline(f, row1);
  CHECK(header == "u,psi,approx1,approx2");
  CHECK(row0 == "0,0.75,,");
  CHECK(row1 == "1,0.5,0.5,0.5");
}

TEST_CASE("the fixture checker catches a planted mismatch") {
  RunResult r = run("paper-examples --self-test");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("[FAIL]") != std::string::npos);
  CHECK(r.output.find("5.1") != std::string::npos);
  CHECK(r.output.find("b[") != std::string::npos);
}
