#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(GRAMSUM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  return std::string("gramsum_cli_test_") + name;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("params --T 1e8") == 0);
  CHECK(run("params --T 1e8 --K 1") == 1);
  CHECK(run("params --T 1e8 --psi nonsense") == 1);
  CHECK(run("bogus") == 1);
  CHECK(run("gram --T 50 --U 10") == 1);
  CHECK(run("sum --T 1e6 --t 1e6x") == 1);
  CHECK(run("gram --nu 5") == 0);
}

TEST_CASE("moments output is deterministic") {
  const std::string a = tmp("a.json"), b = tmp("b.json");
  REQUIRE(run("moments --T 1e4 --u-cap 100 --out " + a) == 0);
  REQUIRE(run("moments --T 1e4 --u-cap 100 --workers 3 --out " + b) == 0);
  auto ja = nlohmann::ordered_json::parse(slurp(a));
  auto jb = nlohmann::ordered_json::parse(slurp(b));
  CHECK(ja["schema"] == "gramsum.moments");
  ja.erase("run_info");
  jb.erase("run_info");
  CHECK(ja.dump() == jb.dump());
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("gram csv and sweep csv") {
  const std::string g = tmp("g.csv"), s = tmp("s.csv");
  REQUIRE(run("gram --T 1000 --U 5 --format csv --out " + g) == 0);
  const std::string gt = slurp(g);
  CHECK(gt.rfind("nu,t,residual\n", 0) == 0);
  const int sweep = run("sweep --T 1e4,1e5 --max-points 100 --out " + s);
  CHECK((sweep == 0 || sweep == 3));
  CHECK(slurp(s).rfind("T,", 0) == 0);
  std::remove(g.c_str());
  std::remove(s.c_str());
}

TEST_CASE("sum reports identity residuals") {
  const std::string o = tmp("sum.json");
  REQUIRE(run("sum --T 1e6 --t 1000000.5 --out " + o) == 0);
  const auto j = nlohmann::json::parse(slurp(o));
  CHECK(std::abs(j["sums"]["w"].get<double>() - 0.19963364339237545) < 1e-12);
  CHECK(std::abs(j["w_squared_residual"].get<double>()) < 1e-9);
  std::remove(o.c_str());
}

TEST_CASE("verify subcommand") {
  CHECK(run("verify --seed 5 --trials 20 --oracle-trials 3") == 0);
}
