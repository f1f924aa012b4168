#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tfsharp/cli.hpp"

using namespace tfsharp;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TFSHARP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tfsharp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

cli::RunConfig config(const std::string& command) {
  cli::RunConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(cli::format_number(0.0) == "0");
  CHECK(cli::format_number(-0.0) == "0");
  CHECK(cli::format_number(1.5) == "1.5");
  CHECK(cli::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(cli::format_number(1e-20) == "1e-20");
}

TEST_CASE("csv rendering") {
  cli::Table t;
  t.columns = {"a", "b"};
  t.rows = {{"1", "x"}, {"2", "y"}};
  CHECK(cli::to_csv(t) == "a,b\n1,x\n2,y\n");
}

TEST_CASE("norm command") {
  cli::RunConfig c = config("norm");
  c.norm = "lp";
  c.exponents = {"2"};
  const cli::RunResult r = cli::execute(c);
  REQUIRE(r.table.rows.size() == 1u);
  // ||exp(-pi t^2)||_2 = 2^{-1/4}.
  CHECK(std::stod(r.table.rows[0].back()) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-10));
  CHECK(r.assertions.front().passed);

  c.norm = "modulation";
  c.exponents = {"4/3", "inf"};
  const cli::RunResult m = cli::execute(c);
  CHECK(m.table.rows[0][1] == "4/3;inf");
  CHECK(m.table.rows[0][3] == "gaussian(1)");
}

TEST_CASE("invalid configuration names the field") {
  auto message = [](cli::RunConfig c) -> std::string {
    try {
      cli::execute(c);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };
  cli::RunConfig c = config("norm");
  c.exponents = {"0.5", "2"};
  CHECK(message(c).find("'exponents'") != std::string::npos);
  c = config("norm");
  c.exponents = {"2"};
  CHECK(message(c).find("'exponents'") != std::string::npos);
  c = config("norm");
  c.L = 3;
  CHECK(message(c).find("'L/m'") != std::string::npos);
  c = config("norm");
  c.family = "sawtooth";
  CHECK(message(c).find("'family'") != std::string::npos);
  c = config("scan-stft");
  c.lambdas = {8, 4, 16, 32};
  CHECK(message(c).find("'lambdas'") != std::string::npos);
  c = config("scan-locop");
  c.lambdas = {4, 8, 16};
  CHECK(message(c).find("'lambdas'") != std::string::npos);
  c = config("frobnicate");
  CHECK(message(c).find("'command'") != std::string::npos);
  c = config("stft");
  c.window = "indicator";
  CHECK(message(c).find("'window'") != std::string::npos);
}

TEST_CASE("stft and locop commands carry their checks") {
  cli::RunConfig c = config("stft");
  c.L = 4;
  c.m = 4;
  c.family = "chirp";
  c.family_param = 2.0;
  const cli::RunResult s = cli::execute(c);
  CHECK(s.table.rows.size() == 256u);
  for (const auto& a : s.assertions) CHECK(a.passed);

  c = config("locop");
  c.L = 8;
  c.m = 8;
  c.family = "random";
  c.symbol = "cube";
  const cli::RunResult l = cli::execute(c);
  CHECK(l.table.rows.size() == 64u);
  REQUIRE(l.assertions.size() == 3u);
  for (const auto& a : l.assertions) CHECK(a.passed);
}

TEST_CASE("verify passes") {
  const cli::RunResult r = cli::execute(config("verify"));
  CHECK(r.assertions.size() >= 30u);
  for (const auto& a : r.assertions) {
    INFO(a.name);
    CHECK(a.passed);
  }
}

TEST_CASE("process exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(run_cli("verify --out " + (dir / "v").string()) == 0);
  CHECK(run_cli("norm --exponents 0.5") == 2);
  CHECK(run_cli("norm --L 5") == 2);
  CHECK(run_cli("bogus") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("--help") == 0);
  CHECK(fs::exists(dir / "v.csv"));
  CHECK(fs::exists(dir / "v.summary.json"));
}

TEST_CASE("config file is read and flags override it") {
  const fs::path dir = scratch("config");
  {
    std::ofstream ini(dir / "run.ini");
    ini << "norm = \"lp\"\nexponents = [\"inf\"]\nfamily = \"gaussian\"\nfamily-param = 2.0\n";
  }
  CHECK(run_cli("norm --config " + (dir / "run.ini").string() + " --out " + (dir / "a").string()) == 0);
  CHECK(read_file(dir / "a.csv").find("lp,inf,gaussian,,1\n") != std::string::npos);
  CHECK(run_cli("norm --config " + (dir / "run.ini").string() + " --exponents 2 --out " + (dir / "b").string()) ==
        0);
  CHECK(read_file(dir / "b.csv").find("lp,2,gaussian,,") != std::string::npos);
}

TEST_CASE("summary records config and regenerates the table") {
  const fs::path dir = scratch("summary");
  const std::string out = (dir / "scan").string();
  REQUIRE(run_cli("scan-locop --lambdas 4 8 16 32 --out " + out) == 0);
  const auto summary = nlohmann::json::parse(read_file(dir / "scan.summary.json"));
  CHECK(summary["command"] == "scan-locop");
  CHECK(summary["config"]["lambdas"].size() == 4u);
  CHECK(summary.contains("versions"));
  CHECK(summary["failed"] == 0);
  const std::string csv = read_file(dir / "scan.csv");
  CHECK(csv.rfind("q,r,predicted,predicted_slope,slope,classified,residual,status\n", 0) == 0);
  CHECK(read_file(dir / "scan.points.csv").rfind("q,r,probe,kind,lambda,value,fit\n", 0) == 0);

  fs::rename(dir / "scan.csv", dir / "orig.csv");
  REQUIRE(run_cli("regenerate --summary " + (dir / "scan.summary.json").string() + " --out " + out) == 0);
  CHECK(read_file(dir / "scan.csv") == read_file(dir / "orig.csv"));
}

TEST_CASE("json output") {
  const fs::path dir = scratch("json");
  REQUIRE(run_cli("norm --format json --out " + (dir / "n").string()) == 0);
  const auto j = nlohmann::json::parse(read_file(dir / "n.json"));
  CHECK(j.is_object());
}
