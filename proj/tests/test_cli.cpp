#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "ahatc/model_io.hpp"
#include "ahatc/smcm.hpp"
#include "machines.hpp"

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "ahatc_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult cli(const std::string& args) {
  fs::path out_file = work_dir() / "stdout.txt";
  std::string cmd = std::string(AHATC_BIN) + " " + args + " > " + out_file.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

void write(const std::string& name, const std::string& contents) {
  std::ofstream out(path_of(name));
  out << contents;
}

std::string slurp(const std::string& name) {
  std::ifstream in(path_of(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: compile + run with verdict exit codes") {
  write("maj.sal", "alphabet: a,b\nx_a - x_b > 0\n");
  auto compiled = cli("compile --mode semialg " + path_of("maj.sal") + " -o " + path_of("maj.ahat"));
  REQUIRE(compiled.exit_code == 0);

  CHECK(cli("run " + path_of("maj.ahat") + " aab").exit_code == 0);
  CHECK(cli("run " + path_of("maj.ahat") + " aab").out == "accept\n");
  CHECK(cli("run " + path_of("maj.ahat") + " ab").exit_code == 1);
  CHECK(cli("run " + path_of("maj.ahat") + " ab").out == "reject\n");
  CHECK(cli("run " + path_of("maj.ahat") + " \"\"").exit_code == 2);
  CHECK(cli("run " + path_of("maj.ahat") + " axb").exit_code == 2);

  SUBCASE("trace dump is JSON with the verdict") {
    auto traced = cli("run --trace " + path_of("maj.ahat") + " aab");
    CHECK(traced.exit_code == 0);
    CHECK(traced.out.find("\"accept\": true") != std::string::npos);
    CHECK(traced.out.find("\"argmax_positions\"") != std::string::npos);
  }

  SUBCASE("identical invocations produce byte-identical outputs") {
    auto again = cli("compile --mode semialg " + path_of("maj.sal") + " -o " + path_of("maj2.ahat"));
    REQUIRE(again.exit_code == 0);
    CHECK(slurp("maj.ahat") == slurp("maj2.ahat"));
  }
}

TEST_CASE("cli: verify certifies equivalence and flags mismatches") {
  write("sqrt.sal", "alphabet: a,b\n(x_a + x_b)^2 - 2*x_a^2 > 0\n");
  REQUIRE(cli("compile --mode semialg " + path_of("sqrt.sal") + " -o " + path_of("sqrt.ahat"))
              .exit_code == 0);
  auto ok = cli("verify " + path_of("sqrt.ahat") + " " + path_of("sqrt.sal") +
                " --max-sum 12 --perms 20 --seed 5");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"equivalent\": true") != std::string::npos);

  write("wrong.sal", "alphabet: a,b\nx_a - x_b > 0\n");
  auto bad = cli("verify " + path_of("sqrt.ahat") + " " + path_of("wrong.sal") + " --max-sum 10");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("\"equivalent\": false") != std::string::npos);

  CHECK(cli("verify " + path_of("sqrt.ahat") + " " + path_of("missing.sal")).exit_code == 2);

  SUBCASE("reports are reproducible for a fixed seed") {
    auto a = cli("verify " + path_of("sqrt.ahat") + " " + path_of("sqrt.sal") +
                 " --max-sum 10 --perms 50 --seed 9 -o " + path_of("r1.json"));
    auto b = cli("verify " + path_of("sqrt.ahat") + " " + path_of("sqrt.sal") +
                 " --max-sum 10 --perms 50 --seed 9 -o " + path_of("r2.json"));
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("r1.json") == slurp("r2.json"));
  }

  SUBCASE("AHATC_THREADS caps parallelism without changing the output") {
    auto capped = cli("verify " + path_of("sqrt.ahat") + " " + path_of("sqrt.sal") +
                      " --max-sum 10 --perms 50 --seed 9 -o " + path_of("r3.json"));
    setenv("AHATC_THREADS", "1", 1);
    auto single = cli("verify " + path_of("sqrt.ahat") + " " + path_of("sqrt.sal") +
                      " --max-sum 10 --perms 50 --seed 9 -o " + path_of("r4.json"));
    unsetenv("AHATC_THREADS");
    REQUIRE(capped.exit_code == 0);
    REQUIRE(single.exit_code == 0);
    CHECK(slurp("r3.json") == slurp("r4.json"));
  }
}

TEST_CASE("cli: qfpa1 round trip through extract") {
  write("bound.qfpa", "alphabet: a,b\n(x_a <= 3) & !(x_a <= 1)\n");
  REQUIRE(cli("compile --mode qfpa1 " + path_of("bound.qfpa") + " -o " + path_of("bound.ahat"))
              .exit_code == 0);
  REQUIRE(cli("extract --mode qfpa " + path_of("bound.ahat") + " -o " + path_of("extracted.qfpa"))
              .exit_code == 0);
  CHECK(slurp("extracted.qfpa").find("model-hash") != std::string::npos);
  auto verified = cli("verify " + path_of("bound.ahat") + " " + path_of("extracted.qfpa") +
                      " --max-sum 20");
  CHECK(verified.exit_code == 0);
}

TEST_CASE("cli: quad2 pipeline with projection membership") {
  write("pyth.quad", "alphabet: X1,X2,X3\nx_X1^2 + x_X2^2 - x_X3^2\n");
  REQUIRE(cli("compile --mode quad2 " + path_of("pyth.quad") + " -o " + path_of("pyth.ahat"))
              .exit_code == 0);
  write("pyth.sal", "alphabet: X1,X2,X3\nx_X1^2 + x_X2^2 - x_X3^2 = 0\n");
  auto verified = cli("verify " + path_of("pyth.ahat") + " " + path_of("pyth.sal") + " --max-sum 12");
  CHECK(verified.exit_code == 0);
}

TEST_CASE("cli: sqrt-nem and hom-nem modes") {
  REQUIRE(cli("compile --mode sqrt-nem -o " + path_of("sqrtnem.ahat")).exit_code == 0);
  CHECK(cli("run " + path_of("sqrtnem.ahat") + " ab").exit_code == 0);
  CHECK(cli("run " + path_of("sqrtnem.ahat") + " aaab").exit_code == 1);

  write("maj.qfpa", "alphabet: a,b\nx_b - x_a < 0\n");
  REQUIRE(cli("compile --mode hom-nem " + path_of("maj.qfpa") + " -o " + path_of("majnem.ahat"))
              .exit_code == 0);
  CHECK(cli("run " + path_of("majnem.ahat") + " aab").exit_code == 0);
  CHECK(cli("run " + path_of("majnem.ahat") + " ab").exit_code == 1);

  write("bad.qfpa", "alphabet: a,b\nx_a - 3 < 0\n");
  CHECK(cli("compile --mode hom-nem " + path_of("bad.qfpa") + " -o " + path_of("nope.ahat"))
            .exit_code == 2);
}

TEST_CASE("cli: bounded emptiness") {
  write("gt2.sal", "alphabet: a,b\nx_a - 2 > 0\n");
  REQUIRE(cli("compile --mode semialg " + path_of("gt2.sal") + " -o " + path_of("gt2.ahat"))
              .exit_code == 0);
  auto found = cli("empty " + path_of("gt2.ahat") + " --max-sum 10");
  CHECK(found.exit_code == 0);
  CHECK(found.out.find("witness (3,0)") != std::string::npos);

  write("never.sal", "alphabet: a,b\n-1 > 0\n");
  REQUIRE(cli("compile --mode semialg " + path_of("never.sal") + " -o " + path_of("never.ahat"))
              .exit_code == 0);
  auto none = cli("empty " + path_of("never.ahat") + " --max-sum 10");
  CHECK(none.exit_code == 1);
  CHECK(none.out.find("not a proof of emptiness") != std::string::npos);
}

TEST_CASE("cli: baselines") {
  write("maj.ltlc", "alphabet: a,b\n1*->#b + 1 <= 1*->#a\n");
  CHECK(cli("baseline ltlc " + path_of("maj.ltlc") + " aab").exit_code == 0);
  CHECK(cli("baseline ltlc " + path_of("maj.ltlc") + " abb").exit_code == 1);

  write("equal.smcm", ahatc::save_smcm(ahatc::testing::equal_counts_machine()));
  CHECK(cli("baseline smcm " + path_of("equal.smcm") + " abab").exit_code == 0);
  CHECK(cli("baseline smcm " + path_of("equal.smcm") + " aab").exit_code == 1);
  CHECK(cli("baseline smcm " + path_of("equal.smcm") + " xyz").exit_code == 2);
}
