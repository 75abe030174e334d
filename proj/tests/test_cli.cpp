#include "varispeed/cli.hpp"
#include "varispeed/io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace varispeed;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("varispeed_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("gen round trip") {
  auto file = scratch_dir() / "a.json";
  auto r = cli({"gen", "-n", "5", "--seed", "1", "-o", file.string()});
  REQUIRE(r.code == kExitOk);
  auto p = read_problem(file.string());
  CHECK(p.instance.size() == 5);
  auto again = problem_from_json(json::parse(slurp(file)));
  CHECK(canonical_text(p) == canonical_text(again));
  auto second = scratch_dir() / "b.json";
  write_problem(second.string(), p);
  CHECK(slurp(file) == slurp(second));
  CHECK(problem_hash(p).size() == 16);
}

TEST_CASE("gen rejects zero jobs") {
  CHECK(cli({"gen", "-n", "0"}).code == kExitUsage);
}

TEST_CASE("gen gadget emits instance, menu and budget") {
  auto r = cli({"gen", "--gadget", "-n", "3", "--due", "2", "--alpha", "2", "--seed", "4"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j.contains("menu"));
  CHECK(j.contains("budget"));
  CHECK(j["jobs"].size() == 3);
  CHECK(j["kind"] == "discrete-energy");
}

TEST_CASE("rationals survive the JSON round trip exactly") {
  Problem p;
  p.instance = make_instance({Job{1, Rational(1, 3), Rational(7, 11), Rational(0)}}, InstanceKind::ContinuousEnergy);
  p.alpha = Rational(5, 2);
  p.budget = Rational(22, 7);
  auto back = problem_from_json(json::parse(to_json(p).dump()));
  CHECK(back.instance.jobs[0].volume == Rational(1, 3));
  CHECK(back.instance.jobs[0].weight == Rational(7, 11));
  CHECK(*back.alpha == Rational(5, 2));
  CHECK(*back.budget == Rational(22, 7));
}

TEST_CASE("exact on the two-job unit-speed instance") {
  auto file = scratch_dir() / "two.json";
  write_text(file, R"({"kind":"given-speed","jobs":[{"id":1,"v":"1","w":"2"},{"id":2,"v":"2","w":"1"}],
                      "speed":{"breakpoints":["0"],"speeds":["1"]}})");
  auto r = cli({"solve", "-i", file.string(), "--algo", "exact"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["cost"].get<double>() == 5.0);
  CHECK(j["cost_exact"] == "5");
  CHECK(j["permutation"] == json::array({1, 2}));
}

TEST_CASE("continuous budgets follow the scaling law and append CSV rows") {
  auto file = scratch_dir() / "c.json";
  REQUIRE(cli({"gen", "-n", "4", "--seed", "3", "--kind", "continuous", "--alpha", "3", "-o", file.string()}).code == 0);
  auto csv = scratch_dir() / "rows.csv";
  fs::remove(csv);
  auto r = cli({"solve", "-i", file.string(), "--algo", "continuous", "--budgets", "1,2", "--csv", csv.string()});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  REQUIRE(j.size() == 2);
  double ratio = j[1]["cost"].get<double>() / j[0]["cost"].get<double>();
  CHECK(ratio == doctest::Approx(std::pow(2.0, -1.0 / 2.0)).epsilon(1e-12));
  std::istringstream lines(slurp(csv));
  std::string header, line;
  std::getline(lines, header);
  CHECK(header == report_csv_header());
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("compare-oracle fills the ratio") {
  auto file = scratch_dir() / "g.json";
  REQUIRE(cli({"gen", "-n", "7", "--seed", "2", "-o", file.string()}).code == 0);
  auto r = cli({"solve", "-i", file.string(), "--algo", "ptas", "--eps", "0.1", "--compare-oracle"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  REQUIRE(j["ratio"].is_number());
  CHECK(j["ratio"].get<double>() >= 1 - 1e-9);
  CHECK(j["ratio"].get<double>() <= 1.25);
}

TEST_CASE("infeasible budget exits with code 2 and a JSON error") {
  auto file = scratch_dir() / "d.json";
  REQUIRE(cli({"gen", "-n", "3", "--seed", "5", "--kind", "discrete", "-o", file.string()}).code == 0);
  auto r = cli({"solve", "-i", file.string(), "--algo", "fptas", "--budget", "1/1000"});
  CHECK(r.code == kExitInfeasible);
  auto j = json::parse(r.out);
  CHECK(j["error"] == "infeasible budget");
}

TEST_CASE("missing files and unknown algorithms are usage errors") {
  CHECK(cli({"solve", "-i", (scratch_dir() / "nope.json").string()}).code == kExitUsage);
  auto file = scratch_dir() / "a2.json";
  REQUIRE(cli({"gen", "-n", "2", "-o", file.string()}).code == 0);
  CHECK(cli({"solve", "-i", file.string(), "--algo", "magic"}).code == kExitUsage);
}

TEST_CASE("parallel solve writes a machine timeline") {
  auto file = scratch_dir() / "p.json";
  REQUIRE(cli({"gen", "-n", "5", "--seed", "6", "--kind", "continuous", "--releases", "4", "-o", file.string()}).code == 0);
  auto tl = scratch_dir() / "tl.csv";
  auto r = cli({"solve", "-i", file.string(), "--algo", "parallel", "-m", "2", "--timeline", tl.string()});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["machines"] == 2);
  CHECK(j["cost"].get<double>() <= j["certified_bound"].get<double>());
  CHECK(slurp(tl).rfind("machine,job_id,start,end\n", 0) == 0);
}

TEST_CASE("pareto CSV") {
  auto file = scratch_dir() / "pc.json";
  REQUIRE(cli({"gen", "-n", "4", "--seed", "8", "--kind", "continuous", "--alpha", "2", "-o", file.string()}).code == 0);
  auto r = cli({"pareto", "-i", file.string(), "--budgets", "1,2,4"});
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "budget,cost,gamma,permutation");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("bench is deterministic and an empty suite prints only the header") {
  std::vector<std::string> args{"bench", "--algos", "ptas,continuous", "--sizes", "3,4", "--eps", "0.4,0.2", "--seeds", "2"};
  auto a = cli(args), b = cli(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("row,algo,n,eps,seed,cost,oracle_cost,ratio,median_ratio,max_ratio\n", 0) == 0);
  auto empty = cli({"bench", "--algos", "ptas", "--sizes", "3", "--seeds", "0"});
  REQUIRE(empty.code == kExitOk);
  CHECK(empty.out == "row,algo,n,eps,seed,cost,oracle_cost,ratio,median_ratio,max_ratio\n");
}

TEST_CASE("the executable reports exit codes") {
  std::string cmd = std::string(VARISPEED_CLI_PATH) + " gen -n 0 >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == kExitUsage);
  cmd = std::string(VARISPEED_CLI_PATH) + " gen -n 2 >/dev/null 2>&1";
  status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == kExitOk);
}
