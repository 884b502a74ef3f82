#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string &args, const std::string &env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + WILSON_CLI_PATH + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("every output starts with a header") {
  const Run r = cli("growth --genset S:1 --radius 3");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("# wilson 1.0.0 command=growth genset=S:1 radius=3", 0) == 0);
  CHECK(cli("ball -r 1 --format dot").out.rfind("// wilson 1.0.0 command=ball", 0) == 0);
  CHECK(cli("local-iso -r 1").out.find("\"header\"") != std::string::npos);
}

TEST_CASE("identical configuration gives identical bytes") {
  CHECK(cli("ball -g S:2 -r 6").out == cli("ball -g S:2 -r 6").out);
  CHECK(cli("ball -g S:2 -r 6 --threads 1").out == cli("ball -g S:2 -r 6 --threads 4").out);
}

TEST_CASE("ball with radius 0 has one row") {
  const auto l = lines(cli("ball -r 0").out);
  REQUIRE(l.size() == 3);
  CHECK(l[1] == "index,length,geodesic");
  CHECK(l[2] == "0,0,ε");
}

TEST_CASE("lambda rows decrease") {
  const auto l = lines(cli("lambda --steps 10 --tol 1e-12").out);
  REQUIRE(l.size() == 12);
  double prev = 1e9;
  for (std::size_t i = 2; i < l.size(); ++i) {
    std::istringstream row(l[i]);
    std::string n, lambda;
    std::getline(row, n, ',');
    std::getline(row, lambda, ',');
    const double v = std::stod(lambda);
    CHECK(v < prev);
    CHECK(v > 1.0);
    prev = v;
  }
}

TEST_CASE("act") {
  const auto l = lines(cli("act -g tilde -w \"x~\" -s 15").out);
  REQUIRE(l.size() == 2);
  CHECK(l[1] == "55");
}

TEST_CASE("exit codes") {
  CHECK(cli("").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("ball -r 13").status == 2);
  CHECK(cli("ball -r 13 --force --genset base").status == 0);
  CHECK(cli("act -g S:1 -w q -s 1").status == 2);
  CHECK(cli("growth -g free -r 6", "WILSON_STATE_BUDGET=2").status == 3);
  CHECK(cli("growth -g free -r 6 --budget 1000000", "WILSON_STATE_BUDGET=2").status == 0);
  CHECK(cli("ball -r 1", "WILSON_STATE_BUDGET=zero").status == 2);
  CHECK(cli("verify-all", "WILSON_STATE_BUDGET=1").status == 1);
  CHECK(cli("lemma30 --max-n 40").status == 0);
}

TEST_CASE("output file") {
  const std::string path = "cli_test_output.csv";
  REQUIRE(cli("curves --output " + path).status == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == cli("curves").out);
  std::remove(path.c_str());
}
