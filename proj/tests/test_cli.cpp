#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef POLYNET_CLI_PATH
#error "POLYNET_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("polynet_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(POLYNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: gen determinism (byte-identical reruns)") {
  TempDir tmp;
  REQUIRE(run_cli("gen uniform-box --n 2 --N 50 --seed 7 --out " + tmp.file("a.csv")) == 0);
  REQUIRE(run_cli("gen uniform-box --n 2 --N 50 --seed 7 --out " + tmp.file("b.csv")) == 0);
  const std::string a = slurp(tmp.file("a.csv"));
  CHECK(a == slurp(tmp.file("b.csv")));
  CHECK(a.rfind("x1,x2\n", 0) == 0);

  // grid generator: 9 points of {1,2,3}^2
  REQUIRE(run_cli("gen grid --n 2 --k 3 --out " + tmp.file("g.csv")) == 0);
  std::istringstream lines(slurp(tmp.file("g.csv")));
  std::string line;
  int rows = -1;  // header
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("cli: empty cloud is an input error") {
  CHECK(run_cli("gen gaussian --n 3 --N 0") == 3);
  CHECK(run_cli("gen mystery --n 2 --N 5") == 3);
  CHECK(run_cli("net weak2 /nonexistent/file.csv") == 3);
}

TEST_CASE("cli: weak2 pipeline verifies end to end") {
  TempDir tmp;
  REQUIRE(run_cli("gen uniform-box --n 2 --N 12 --seed 3 --out " + tmp.file("c.csv")) == 0);
  REQUIRE(run_cli("net weak2 " + tmp.file("c.csv") + " --out " + tmp.file("cert.json")) == 0);

  nlohmann::json cert = nlohmann::json::parse(slurp(tmp.file("cert.json")));
  CHECK(cert["net_points"].size() <= 3);
  CHECK(cert["guarantee"].get<double>() == doctest::Approx(1.0 / 6.0));

  CHECK(run_cli("verify exact " + tmp.file("c.csv") + " " + tmp.file("cert.json") + " --out " +
                tmp.file("rep.json")) == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(tmp.file("rep.json")));
  CHECK(rep["verified"].get<bool>());
  CHECK(rep["kept_mass"].get<double>() >= 1.0 / 6.0 - 1e-9);

  CHECK(run_cli("verify heuristic " + tmp.file("c.csv") + " " + tmp.file("cert.json") +
                " --iterations 500 --seed 1") == 0);
}

TEST_CASE("cli: truncated net is verified false") {
  TempDir tmp;
  REQUIRE(run_cli("gen uniform-box --n 2 --N 12 --seed 3 --out " + tmp.file("c.csv")) == 0);
  REQUIRE(run_cli("net weak2 " + tmp.file("c.csv") + " --out " + tmp.file("cert.json")) == 0);
  nlohmann::json cert = nlohmann::json::parse(slurp(tmp.file("cert.json")));
  REQUIRE(cert["net_points"].size() >= 2);
  cert["net_points"].erase(cert["net_points"].size() - 1);
  cert["weights"].erase(cert["weights"].size() - 1);
  {
    std::ofstream out(tmp.file("trunc.json"));
    out << cert.dump();
  }
  CHECK(run_cli("verify exact " + tmp.file("c.csv") + " " + tmp.file("trunc.json")) == 1);
}

TEST_CASE("cli: exact verification refuses past the cap") {
  TempDir tmp;
  REQUIRE(run_cli("gen uniform-box --n 2 --N 12 --seed 5 --out " + tmp.file("small.csv")) == 0);
  REQUIRE(run_cli("net weak2 " + tmp.file("small.csv") + " --out " + tmp.file("cert.json")) == 0);
  REQUIRE(run_cli("gen uniform-box --n 2 --N 25 --seed 5 --out " + tmp.file("big.csv")) == 0);
  CHECK(run_cli("verify exact " + tmp.file("big.csv") + " " + tmp.file("cert.json")) == 2);
}

TEST_CASE("cli: witness, depth, bounds, griddim") {
  TempDir tmp;
  REQUIRE(run_cli("gen uniform-box --n 2 --N 12 --seed 11 --out " + tmp.file("c.csv")) == 0);
  REQUIRE(run_cli("gen uniform-box --n 2 --N 2 --seed 12 --out " + tmp.file("x.csv")) == 0);
  REQUIRE(run_cli("witness " + tmp.file("c.csv") + " " + tmp.file("x.csv") + " --D 1 --out " +
                  tmp.file("w.json")) == 0);
  nlohmann::json w = nlohmann::json::parse(slurp(tmp.file("w.json")));
  CHECK(w["kept_mass"].get<double>() == doctest::Approx(0.0).scale(1.0));

  // a 3-point candidate refuses (no vanishing polynomial guaranteed)
  REQUIRE(run_cli("gen uniform-box --n 2 --N 3 --seed 13 --out " + tmp.file("x3.csv")) == 0);
  CHECK(run_cli("witness " + tmp.file("c.csv") + " " + tmp.file("x3.csv") + " --D 1") == 2);

  REQUIRE(run_cli("depth " + tmp.file("c.csv") + " --out " + tmp.file("d.json")) == 0);
  nlohmann::json d = nlohmann::json::parse(slurp(tmp.file("d.json")));
  CHECK(d["depth"].get<double>() >= 1.0 / 3.0 - 1e-9);
  CHECK(run_cli("depth " + tmp.file("c.csv") + " --at 100,100") == 0);

  REQUIRE(run_cli("bounds --n 2 --k 2 --out " + tmp.file("b.json")) == 0);
  nlohmann::json b = nlohmann::json::parse(slurp(tmp.file("b.json")));
  CHECK(b["trivial_upper"] == 15);
  CHECK(b["lower_item2"] == 4);
  CHECK(b["upper_item3"] == 12);
  CHECK(run_cli("bounds --n 40 --k 40") == 2);

  REQUIRE(run_cli("griddim --n 2 --k 2 --out " + tmp.file("gm.json")) == 0);
  nlohmann::json gm = nlohmann::json::parse(slurp(tmp.file("gm.json")));
  CHECK(gm["restriction_rank"] == 4);
  CHECK(gm["vanishing_dim"] == 11);
  CHECK(gm["lower_bound_check"].get<bool>());
}

TEST_CASE("cli: net JSON output is byte-identical across reruns") {
  TempDir tmp;
  REQUIRE(run_cli("gen gaussian --n 2 --N 10 --seed 2 --out " + tmp.file("c.csv")) == 0);
  REQUIRE(run_cli("net weak2 " + tmp.file("c.csv") + " --out " + tmp.file("a.json")) == 0);
  REQUIRE(run_cli("net weak2 " + tmp.file("c.csv") + " --out " + tmp.file("b.json")) == 0);
  CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
}
