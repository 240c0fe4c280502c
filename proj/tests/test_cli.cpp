#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr merged
};

std::string cli_path() {
  const char* env = std::getenv("SPHSUM_BIN");
  return env != nullptr ? env : "./build/tools/sphsum";
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<double> csv_row(const std::string& line) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) end = line.size();
    vals.push_back(std::atof(line.substr(start, end - start).c_str()));
    start = end + 1;
  }
  return vals;
}

}  // namespace

TEST_CASE("cli phi: trivial values and the --mc columns") {
  const RunResult unit = run_cli(R"(phi --json '{"s":[0,0],"x":[1,2]}')");
  CHECK(unit.exit_code == 0);
  CHECK(unit.output.find("re,im\n1,0\n") != std::string::npos);

  const RunResult scalar = run_cli(R"(phi --json '{"s":[1],"x":[2]}')");
  const auto row = csv_row(lines_of(scalar.output)[1]);
  CHECK(row[0] == doctest::Approx(std::cos(2.0)).epsilon(1e-9));
  CHECK(row[1] == doctest::Approx(std::sin(2.0)).epsilon(1e-9));

  const RunResult mc = run_cli(R"(phi --json '{"s":[1,2],"x":[0.5,-0.5]}' --mc 20000 --seed 3)");
  CHECK(mc.exit_code == 0);
  CHECK(lines_of(mc.output)[0] == "re,im,mc_re,mc_im,mc_stderr");
  const auto mcrow = csv_row(lines_of(mc.output)[1]);
  CHECK(std::abs(mcrow[2] - mcrow[0]) <= 3.0 * mcrow[4]);
}

TEST_CASE("cli transform: closed forms and the numeric check column") {
  const RunResult gue =
      run_cli(R"(transform --json '{"ensemble":{"variant":"gue","n":1},"s_grid":{"from":0,"to":2,"count":5}}')");
  CHECK(gue.exit_code == 0);
  const auto lines = lines_of(gue.output);
  CHECK(lines[0] == "s1,re,im");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = csv_row(lines[i]);
    CHECK(row[1] == doctest::Approx(std::exp(-0.5 * row[0] * row[0])).epsilon(1e-9));
    CHECK(row[2] == doctest::Approx(0.0).epsilon(1e-12));
  }

  const RunResult lue = run_cli(
      R"(transform --json '{"ensemble":{"variant":"lue","n":1,"alpha":0},"s_grid":{"from":0.5,"to":1.5,"count":3}}' --numeric)");
  const auto lue_lines = lines_of(lue.output);
  CHECK(lue_lines[0] == "s1,re,im,numeric_re,numeric_im,abs_diff");
  for (std::size_t i = 1; i < lue_lines.size(); ++i) {
    const auto row = csv_row(lue_lines[i]);
    const double s = row[0];
    CHECK(row[1] == doctest::Approx(1.0 / (1.0 + s * s)).epsilon(1e-9));
    CHECK(row[2] == doctest::Approx(-s / (1.0 + s * s)).epsilon(1e-9));
    CHECK(row[5] < 1e-6);
  }
}

TEST_CASE("cli sum: scalar gaussian closed form and the corollary path log") {
  const RunResult sum = run_cli(
      R"(sum --json '{"a":{"variant":"gue","n":1},"b":{"variant":"gue","n":1},"grid":{"from":-1,"to":1,"count":3}}')");
  CHECK(sum.exit_code == 0);
  CHECK(sum.output.find("path: add_gue") != std::string::npos);
  for (const auto& line : lines_of(sum.output)) {
    if (line.empty() || line[0] == 'p' || line[0] == 'x') continue;
    const auto row = csv_row(line);
    const double want = std::exp(-0.25 * row[0] * row[0]) / std::sqrt(4.0 * M_PI);
    CHECK(row[1] == doctest::Approx(want).epsilon(1e-7));
  }

  const RunResult pe_lue = run_cli(
      R"(sum --json '{"a":{"variant":"lue","n":2,"alpha":0,"as_pe":true},"b":{"variant":"lue","n":2,"alpha":1},"grid":[[1.0,2.5]]}')");
  CHECK(pe_lue.exit_code == 0);
  CHECK(pe_lue.output.find("path: add_lue") != std::string::npos);
}

TEST_CASE("cli kernel: scalar diagonal and trace column") {
  const RunResult k = run_cli(
      R"(kernel --json '{"ensemble":{"variant":"lue","n":1,"alpha":0},"grid":{"from":0.5,"to":1.5,"count":3}}')");
  CHECK(k.exit_code == 0);
  const auto lines = lines_of(k.output);
  CHECK(lines[0] == "x,kdiag,trace");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = csv_row(lines[i]);
    CHECK(row[1] == doctest::Approx(std::exp(-row[0])).epsilon(1e-9));
    CHECK(row[2] == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("cli kernel --transformed agrees with the sum marginal pipeline") {
  // the LUE-shift kernel route and the summed-ensemble biorth route must
  // produce the same one-point density (the gauge-invariant diagonal)
  const std::string grid = R"("grid":{"from":0.5,"to":6.5,"count":7})";
  const RunResult shifted = run_cli(
      R"(kernel --json '{"ensemble":{"variant":"lue","n":2,"alpha":0,"as_pe":true},)" + grid +
      "}' --transformed --alpha 0");
  const RunResult marginal = run_cli(
      R"(sum --kind marginal --json '{"a":{"variant":"lue","n":2,"alpha":0,"as_pe":true},"b":{"variant":"lue","n":2,"alpha":0},)" +
      grid + "}'");
  CHECK(shifted.exit_code == 0);
  CHECK(marginal.exit_code == 0);
  const auto klines = lines_of(shifted.output);
  std::vector<std::string> mlines;
  for (const auto& line : lines_of(marginal.output))
    if (!line.empty() && line[0] != 'p') mlines.push_back(line);  // drop the path log
  REQUIRE(klines.size() >= 8);
  REQUIRE(mlines.size() >= 8);
  for (int i = 1; i <= 7; ++i) {
    const auto krow = csv_row(klines[i]);
    const auto mrow = csv_row(mlines[i]);
    CHECK(std::abs(krow[1] / 2.0 - mrow[1]) < 1e-4);
  }
}

TEST_CASE("cli validate: pass, determinism, and the power check") {
  const std::string cfg =
      R"(validate --json '{"a":{"variant":"gue","n":2},"b":{"variant":"gue","n":2},"samples":5000,"gate":0.03}' --seed 7)";
  const RunResult a = run_cli(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("pass") != std::string::npos);
  const RunResult b = run_cli(cfg);
  CHECK(a.output == b.output);  // byte-identical reports

  const RunResult wrong = run_cli(
      R"(validate --json '{"a":{"variant":"lue","n":2,"alpha":1},"target":{"variant":"lue","n":2,"alpha":3,"as_pe":true},"samples":5000,"gate":0.02}' --seed 7)");
  CHECK(wrong.exit_code == 5);
  CHECK(wrong.output.find("fail") != std::string::npos);
}

TEST_CASE("cli sample: spectra rows and histogram output") {
  const RunResult rows =
      run_cli(R"(sample --json '{"model":{"variant":"lue","n":2,"alpha":0},"samples":5}' --seed 11)");
  CHECK(rows.exit_code == 0);
  const auto lines = lines_of(rows.output);
  CHECK(lines[0] == "x1,x2");
  CHECK(lines.size() == 6);
  const RunResult again =
      run_cli(R"(sample --json '{"model":{"variant":"lue","n":2,"alpha":0},"samples":5}' --seed 11)");
  CHECK(rows.output == again.output);

  const RunResult hist = run_cli(
      R"(sample --json '{"model":{"variant":"gue","n":1},"samples":500}' --histogram --seed 13)");
  CHECK(hist.exit_code == 0);
  CHECK(lines_of(hist.output)[0] == "bin_left,bin_right,density");
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli(R"(phi --json '{"s":[1,2],"x":[3]}')").exit_code == 3);
  CHECK(run_cli(R"(phi --json 'garbage')").exit_code == 2);
  CHECK(run_cli(R"(phi --json '{"x":[3]}')").exit_code == 2);
  CHECK(run_cli("phi").exit_code == 2);  // missing config entirely
  // numeric-form inversion limit: pe+pe at n=3 exceeds the generic path
  const RunResult cap = run_cli(
      R"(sum --json '{"a":{"variant":"lue","n":3,"alpha":0,"as_pe":true},"b":{"variant":"lue","n":3,"alpha":0,"as_pe":true},"grid":[[1,2,3]]}')");
  CHECK(cap.exit_code == 4);
  CHECK(cap.output.find("generic-inversion") != std::string::npos);
}
