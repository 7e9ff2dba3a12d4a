#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohrlab/cli.hpp"

using namespace bohrlab;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bohrlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("region command") {
  const RunResult r = invoke({"bound", "region", "--p", "inf", "--q", "inf"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["result"]["region"] == "II");
  CHECK(j["result"]["rate"] == "sqrt(log n)/sqrt(n)");
  CHECK(j["config"]["command"] == "bound");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"bound", "region", "--bogus"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"bound", "region", "--p", "1/2"}).code == 2);
  CHECK(invoke({"bound", "jsum", "--m", "2", "--n", "2", "--p", "2", "--q", "1"}).code == 2);
  CHECK(invoke({"witness", "search", "--m", "2", "--n", "2", "--budget", "0"}).code == 3);
  CHECK(invoke({"norm", "--poly", "/nonexistent/poly.json"}).code == 2);
}

TEST_CASE("CSV emission") {
  const RunResult r = invoke({"enumerate", "--m", "2", "--n", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string first, header, row;
  std::getline(lines, first);
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(first.rfind("# config: {", 0) == 0);
  CHECK(header == "index,exponents,multiplicity,provenance");
  CHECK(row == "1,2;0,1,exact");

  const RunResult j = invoke({"bound", "jsum", "--m", "3", "--n", "2", "--p", "2", "--q", "4/3", "--format", "csv"});
  CHECK(j.out.find("\n3,2,2,4/3,2.5,,,exact-sum\n") != std::string::npos);

  const RunResult set = invoke({"enumerate", "--m", "2", "--n", "3", "--set", "j", "--format", "csv"});
  CHECK(set.out.find("index,indices,multiplicity") != std::string::npos);
  CHECK(set.out.find("\n2,1;2,2,exact\n") != std::string::npos);
}

TEST_CASE("polynomial emission and norm round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "bohrlab_cli_test";
  std::filesystem::create_directories(dir);
  const auto poly = dir / "poly.json";
  const RunResult p = invoke({"poly", "sign", "--m", "2", "--n", "2", "--signs", "+--"});
  REQUIRE(p.code == 0);
  std::ofstream(poly) << Json::parse(p.out)["result"].dump();
  const RunResult n = invoke({"norm", "--poly", poly.string(), "--p", "inf", "--restarts", "16", "--seed", "3"});
  REQUIRE(n.code == 0);
  CHECK(Json::parse(n.out)["result"]["value"].get<double>() == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
  const RunResult m = invoke({"norm", "--poly", poly.string(), "--majorant", "--q", "inf", "--restarts", "4"});
  CHECK(Json::parse(m.out)["result"]["value"].get<double>() == doctest::Approx(4.0));

  const RunResult mo = invoke({"poly", "moebius", "--a", "0.5", "--degree", "3"});
  CHECK(Json::parse(mo.out)["result"]["a0"]["re"] == 0.5);
}

TEST_CASE("reproducible output, sidecar and config file") {
  const auto dir = std::filesystem::temp_directory_path() / "bohrlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> args{"witness", "bracket", "--m", "2", "--n", "3", "--p", "2",
                                      "--q", "3/2",     "--budget", "10", "--samples", "50", "--workers", "2"};
  const RunResult a = invoke(args);
  const RunResult b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out)["result"];
  CHECK(j.contains("lower"));
  CHECK(j.contains("lower_src"));
  CHECK(j.contains("upper_src"));
  CHECK(j.contains("flags"));

  const auto file = dir / "region.csv";
  std::filesystem::remove(file.string() + ".meta.json");
  REQUIRE(invoke({"bound", "region", "--p", "4", "--q", "4/3", "--format", "csv", "--output", file.string()}).code == 0);
  CHECK(slurp(file).find("4,4/3,I,1,") != std::string::npos);
  CHECK(std::filesystem::exists(file.string() + ".meta.json"));
  CHECK(slurp(file).find("created") == std::string::npos);

  const auto cfg = dir / "run.toml";
  std::ofstream(cfg) << "seed = 17\nformat = \"csv\"\n";
  const RunResult c = invoke({"--config", cfg.string(), "bound", "rate", "--n", "16", "--p", "inf", "--q", "inf"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("\"seed\":17") != std::string::npos);
  CHECK(c.out.find("m,n,p,q,value,regime,flags,provenance") != std::string::npos);

  setenv("BOHRLAB_SEED", "23", 1);
  const RunResult e = invoke({"bound", "region", "--p", "2", "--q", "2"});
  unsetenv("BOHRLAB_SEED");
  CHECK(Json::parse(e.out)["config"]["seed"] == 23);
  CHECK(Json::parse(invoke({"bound", "region", "--seed", "5"}).out)["config"]["seed"] == 5);
}

TEST_CASE("selftest is deterministic and passes") {
  const RunResult a = invoke({"selftest", "--workers", "1"});
  const RunResult b = invoke({"selftest", "--workers", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
