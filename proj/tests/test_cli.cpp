#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

std::string binary_path() {
  const char* env = std::getenv("HEINZLAB_BIN");
  REQUIRE_MESSAGE(env != nullptr, "HEINZLAB_BIN must point at the CLI binary");
  return env;
}

RunResult run(const std::string& args) {
  std::string cmd = binary_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/heinzlab_cli_test_") + name;
}

void write_temp(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("eval prints 17-significant-digit values") {
  RunResult r = run("eval --op heinz-mean --a 9 --b 1 --nu 0.25");
  CHECK(r.exit_code == 0);
  double value = std::stod(r.output);
  CHECK(std::abs(value - 2.0 * std::sqrt(3.0)) <= 1e-12);
  CHECK(r.output.find("3.4641016151377") != std::string::npos);
}

TEST_CASE("eval young sandwich collapses at a = b") {
  RunResult r = run("eval --op young-sandwich --a 3 --b 3 --nu 0.7");
  CHECK(r.exit_code == 0);
  double lower, middle, upper;
  REQUIRE(std::sscanf(r.output.c_str(), "%lf, %lf, %lf", &lower, &middle, &upper) == 3);
  CHECK(lower == 0.0);
  CHECK(std::abs(middle) <= 1e-12);
  CHECK(upper == 0.0);
}

TEST_CASE("eval exit codes") {
  CHECK(run("eval --op schatten --p 0.5 --matrix-file /tmp/nonexistent.json").exit_code == 3);
  RunResult bad = run("eval --op schatten --p 0.5 --matrix-file /dev/null");
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("p >= 1") != std::string::npos);
  CHECK(run("eval --op no-such-op --a 1 --b 2").exit_code == 2);
  CHECK(run("eval --op hilbert-schmidt --matrix-file /tmp/nonexistent.json").exit_code == 4);
  CHECK(run("nonsense-command").exit_code == 2);
  CHECK(run("eval --op weighted-arithmetic --a 1").exit_code == 3);  // missing --b
}

TEST_CASE("verify writes byte-identical reports") {
  std::string out1 = temp_path("r1.json");
  std::string out2 = temp_path("r2.json");
  RunResult r1 = run("verify --suite scalar --trials 2000 --seed 42 --out " + out1);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("OK 2000 trials") != std::string::npos);
  RunResult r2 = run("verify --suite scalar --trials 2000 --seed 42 --out " + out2);
  CHECK(r2.exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  REQUIRE(s1.str().size() > 100);
  CHECK(s1.str() == s2.str());
}

TEST_CASE("verify exit code reflects violations") {
  RunResult clean = run("verify --suite matrix --trials 200 --dim-max 4 --seed 7");
  CHECK(clean.exit_code == 0);
  RunResult mutated =
      run("verify --suite scalar --trials 3000 --seed 42 --mutate-ineq eq4");
  CHECK(mutated.exit_code == 1);
  CHECK(mutated.output.find("FAIL") != std::string::npos);
  CHECK(run("verify --suite bogus --trials 10").exit_code == 3);
}

TEST_CASE("report renders a verify output file") {
  std::string out = temp_path("report_in.json");
  REQUIRE(run("verify --suite scalar --trials 500 --seed 1 --out " + out).exit_code == 0);
  RunResult rep = run("report --in " + out);
  CHECK(rep.exit_code == 0);
  CHECK(rep.output.find("eq4") != std::string::npos);
  CHECK(rep.output.find("suite: scalar") != std::string::npos);
  CHECK(run("report --in /tmp/nonexistent.json").exit_code == 4);
  write_temp(temp_path("bad.json"), "{\"schema\":\"other/9\"}");
  CHECK(run("report --in " + temp_path("bad.json")).exit_code == 4);
}

TEST_CASE("sweep eq16 shows the m = 1, 2 degeneracy") {
  RunResult r = run("sweep --ineq eq16 --a 4 --b 1 --nu 0.25 --m 1:6");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "m,nu,t1,t2,t3,t4");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    double m, nu, t1, t2, t3, t4;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &m, &nu, &t1, &t2, &t3,
                        &t4) == 6);
    if (m <= 2.0) {
      CHECK(std::abs(t1 - t2) <= 1e-12 * std::max(t1, t2));
    } else {
      CHECK(t2 - t1 > 1e-12 * t2);
    }
    CHECK(t1 <= t2);
    CHECK(t2 <= t3 + 1e-12 * t3);
    CHECK(t3 <= t4 + 1e-12 * t4);
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("sweep eq15 endpoints match the dedicated sandwiches") {
  RunResult r = run("sweep --ineq eq15 --a 9 --b 1 --nu 0.25 --p 1:2:0.5");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.output) == 4);  // header + p = 1, 1.5, 2
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);  // p = 1
  double p, nu, lower, middle, upper, ls, us;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &p, &nu, &lower, &middle,
                      &upper, &ls, &us) == 7);
  CHECK(p == 1.0);
  CHECK(std::abs(lower - 1.0) <= 1e-12);
  CHECK(std::abs(middle - (3.0 - std::sqrt(3.0))) <= 1e-12);
  CHECK(std::abs(upper - 3.0) <= 1e-12);
  std::getline(lines, line);  // p = 1.5
  std::getline(lines, line);  // p = 2
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &p, &nu, &lower, &middle,
                      &upper, &ls, &us) == 7);
  CHECK(p == 2.0);
  CHECK(std::abs(lower - 4.0) <= 1e-11);
  CHECK(std::abs(middle - 6.0) <= 1e-11);
  CHECK(std::abs(upper - 36.0) <= 1e-10);
}

TEST_CASE("sweep heinz-scan emits a symmetric grid") {
  std::string triple = temp_path("triple.json");
  write_temp(triple, R"({
    "A": {"rows": 2, "cols": 2, "data": [[4,0],[0,0],[0,0],[1,0]]},
    "B": {"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0],[4,0]]},
    "X": {"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0],[1,0]]}
  })");
  RunResult r = run("sweep --ineq heinz-scan --matrix-file " + triple + " --grid 9");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "nu,f");
  std::vector<double> fs;
  std::string line;
  while (std::getline(lines, line)) {
    double nu, fval;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &nu, &fval) == 2);
    fs.push_back(fval);
  }
  REQUIRE(fs.size() == 9);
  for (std::size_t i = 0; i < fs.size(); ++i)
    CHECK(std::abs(fs[i] - fs[fs.size() - 1 - i]) <= 1e-10 * fs[i]);
  CHECK(fs[4] <= fs[0]);
}

TEST_CASE("sweep rejects an empty grid") {
  CHECK(run("sweep --ineq eq16 --a 4 --b 1 --nu 0.25 --m 6:1").exit_code == 3);
  CHECK(run("sweep --ineq heinz-scan --matrix-file /dev/null --grid 2").exit_code == 3);
}
