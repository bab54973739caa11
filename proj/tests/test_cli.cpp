#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ffembed/space.hpp"

using namespace ffembed;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(FFEMBED_CLI_PATH) + " " + args + " 2>/tmp/ffembed_cli_err.txt";
  return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("gen produces byte-identical files for identical configs") {
  REQUIRE(run("gen --q 7 --d 2 --gen random --density 0.5 --seed 11 --out /tmp/cli_a.txt") == 0);
  REQUIRE(run("gen --q 7 --d 2 --gen random --density 0.5 --seed 11 --out /tmp/cli_b.txt") == 0);
  CHECK(slurp("/tmp/cli_a.txt") == slurp("/tmp/cli_b.txt"));
  REQUIRE(run("gen --q 7 --d 2 --gen random --density 0.5 --seed 12 --out /tmp/cli_c.txt") == 0);
  CHECK(slurp("/tmp/cli_a.txt") != slurp("/tmp/cli_c.txt"));
  PointSet E = load_point_set("/tmp/cli_a.txt");
  CHECK(E.size() == 25);  // ceil(49/2)
}

TEST_CASE("count emits the documented CSV") {
  REQUIRE(run("count --q 3 --d 2 --t 1 --graph chain:2 --gen full --out /tmp/cli_count.txt") == 0);
  std::string text = slurp("/tmp/cli_count.txt");
  CHECK(text ==
        "q,d,t,density,size,graph,total,nondeg,degen,bound,verdict\n"
        "3,2,1,1,9,chain:2,144,108,36,81,\n");
}

TEST_CASE("count round-trips through a generated file") {
  REQUIRE(run("gen --q 5 --d 2 --gen random --density 0.6 --seed 3 --out /tmp/cli_set.txt") == 0);
  REQUIRE(run("count --q 5 --d 2 --t 1 --graph simplex:2 --set /tmp/cli_set.txt "
              "--out /tmp/cli_file_count.txt") == 0);
  REQUIRE(run("count --q 5 --d 2 --t 1 --graph simplex:2 --gen random --density 0.6 --seed 3 "
              "--out /tmp/cli_mem_count.txt") == 0);
  CHECK(slurp("/tmp/cli_file_count.txt") == slurp("/tmp/cli_mem_count.txt"));
}

TEST_CASE("audit reports are byte-identical across runs") {
  std::string args =
      "audit --id IR_PAIR_COUNT --q 5 --d 2 --t 2 --gen random --density 0.7 --seed 5 --out ";
  REQUIRE(run(args + "/tmp/cli_audit_a.txt") == 0);
  REQUIRE(run(args + "/tmp/cli_audit_b.txt") == 0);
  std::string a = slurp("/tmp/cli_audit_a.txt");
  CHECK(a == slurp("/tmp/cli_audit_b.txt"));
  CHECK(a.find("verdict = HOLDS") != std::string::npos);
}

TEST_CASE("the corpus run is byte-identical across invocations") {
  REQUIRE(run("audit --q 5 --d 2 --corpus --gen full --out /tmp/cli_corpus_a.txt") == 0);
  REQUIRE(run("audit --q 5 --d 2 --corpus --gen full --out /tmp/cli_corpus_b.txt") == 0);
  std::string a = slurp("/tmp/cli_corpus_a.txt");
  CHECK(a == slurp("/tmp/cli_corpus_b.txt"));
  CHECK(a.find("id = STREE_NONDEG") != std::string::npos);
  CHECK(a.find("verdict = VIOLATED") == std::string::npos);
}

TEST_CASE("product generator writes a cartesian power") {
  REQUIRE(run("gen --q 7 --d 2 --gen product --density 0.3 --seed 2 --out /tmp/cli_prod.txt") == 0);
  PointSet E = load_point_set("/tmp/cli_prod.txt");
  CHECK(E.size() == 9);  // ceil(0.3 * 7) = 3 coordinates, squared
}

TEST_CASE("sweep rows are monotone in density") {
  REQUIRE(run("sweep --q 5 --d 3 --t 1 --graph simplex:2 --density-from 0.1 --density-to 1 "
              "--density-step 0.1 --seed 7 --out /tmp/cli_sweep.txt") == 0);
  std::ifstream is("/tmp/cli_sweep.txt");
  std::string line;
  std::getline(is, line);
  CHECK(line == "q,d,t,density,size,graph,total,nondeg,degen,bound,verdict");
  long long prev_total = -1;
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    // total is the 7th comma-separated column
    std::istringstream ss(line);
    std::string col;
    for (int i = 0; i < 7; ++i) std::getline(ss, col, ',');
    long long total = std::stoll(col);
    CHECK(total >= prev_total);
    prev_total = total;
  }
  CHECK(rows == 10);
}

TEST_CASE("profile output sums to the total") {
  REQUIRE(run("profile --q 3 --d 2 --t 1 --graph star:2 --gen full --out /tmp/cli_prof.txt") == 0);
  std::ifstream is("/tmp/cli_prof.txt");
  std::string line;
  std::getline(is, line);  // header comment
  long long sum = 0;
  int rows = 0;
  while (std::getline(is, line)) {
    auto pos = line.rfind(' ');
    sum += std::stoll(line.substr(pos + 1));
    ++rows;
  }
  CHECK(rows == 9);
  CHECK(sum == 144);  // sum of deg^2
}

TEST_CASE("shave writes a loadable subset with metadata") {
  REQUIRE(run("shave --q 13 --d 2 --t 1 --lambda 2 --gen full --out /tmp/cli_shave.txt") == 0);
  std::string text = slurp("/tmp/cli_shave.txt");
  CHECK(text.find("# hypothesis_met = false") != std::string::npos);
  PointSet E = load_point_set("/tmp/cli_shave.txt");
  CHECK(E.size() == 169);
}

TEST_CASE("errors exit nonzero with a machine-parsable record") {
  CHECK(run("count --q 4 --d 2 --t 1 --graph chain:1 --gen full") != 0);
  std::string err = slurp("/tmp/ffembed_cli_err.txt");
  CHECK(err.find("error: NotOddPrimePower") != std::string::npos);
  CHECK(run("count --q 5 --d 2 --t 1 --graph nosuch:1 --gen full") != 0);
  CHECK(slurp("/tmp/ffembed_cli_err.txt").find("error: BadParams") != std::string::npos);
  CHECK(run("gen --q 5 --d 2 --gen random --density 0.5") != 0);  // seed missing
  CHECK(slurp("/tmp/ffembed_cli_err.txt").find("error: MissingParam") != std::string::npos);
}

TEST_CASE("the budget env var is honored") {
  std::string cmd = std::string("FFEMBED_BUDGET=10 ") + FFEMBED_CLI_PATH +
                    " count --q 5 --d 2 --t 1 --graph chain:3 --gen full 2>/tmp/ffembed_cli_err.txt";
  CHECK(std::system(cmd.c_str()) != 0);
  CHECK(slurp("/tmp/ffembed_cli_err.txt").find("error: BudgetExceeded") != std::string::npos);
}
