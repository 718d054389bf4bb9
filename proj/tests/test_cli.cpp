#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "cli.hpp"

using namespace unitcycle;
using unitcycle::cli::dispatch;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json run_json(std::vector<std::string> args, int expected_exit = 0) {
  args.insert(args.begin(), "--json");
  const auto r = dispatch(args);
  INFO(r.err);
  REQUIRE(r.exit_code == expected_exit);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("exit-code matrix") {
  struct Case {
    std::vector<std::string> args;
    int exit;
  };
  const std::vector<Case> cases{
      {{"admits", "3"}, 0},
      {{"admits", "5", "--mode", "general:10"}, 1},
      {{"admits", "4"}, 2},
      {{"admits", "5,x"}, 2},
      {{"admits", "3", "--mode", "cubic"}, 2},
      {{"--ceiling", "10", "admits", "2,3,5", "--mode", "general:4"}, 3},
      {{"interpolate", "1,2,3,4", "--ring", "3"}, 0},
      {{"interpolate", "1,2,3,4", "--ring", "2"}, 1},
      {{"interpolate", "0,1,0,2", "--ring", "3"}, 2},
      {{"verify-cycle", "--poly", "5,-19/3,4,-2/3", "--points", "1,2,3,4", "--ring", "3"}, 0},
      {{"verify-cycle", "--poly", "5,-19/3,4,-2/3", "--points", "1,2,3,5", "--ring", "3"}, 1},
      {{"orbit", "--poly", "5,-19/3,4,-2/3", "--start", "1", "--max", "10"}, 0},
      {{"orbit", "--poly", "1,1", "--start", "0", "--max", "5"}, 1},
      {{"zieve", "--ring", "2"}, 0},
      {{"zieve", "--ring", "5", "--bound", "6"}, 1},
      {{"certify-avoid", "5,17,257", "--mode", "linear"}, 0},
      {{"certify-avoid", "5,7"}, 1},
      {{"build-avoiding", "--k", "3", "--n", "1"}, 0},
      {{"abc-pair", "--C", "1", "--m", "8"}, 2},
      {{"lenstra", "--ring", "2", "--k", "4", "--bound", "20"}, 1},
      {{"lenstra", "--ring", "", "--k", "2"}, 0},
      {{"survey", "--pool", "50", "--size", "5"}, 3},
      {{"survey", "--pool", "4", "--size", "5"}, 2},
      {{"frobnicate"}, 2},
      {{}, 2},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + ' ';
    const auto r = dispatch(c.args);
    INFO(joined << "-> " << r.out << r.err);
    CHECK(r.exit_code == c.exit);
  }
}

TEST_CASE("human-readable outputs") {
  auto r = dispatch({"admits", "3"});
  CHECK(r.out.find("3 = 1 + 1 + 1") != std::string::npos);
  r = dispatch({"admits", "5", "--mode", "general:10"});
  CHECK(r.out.find("avoids within bound 10") != std::string::npos);
  r = dispatch({"interpolate", "1,2,3,4", "--ring", "3"});
  CHECK(r.out.find("-2/3x^3 + 4x^2 - 19/3x + 5") != std::string::npos);
  r = dispatch({"interpolate", "-10,-3,-4,-9", "--ring", "5,7"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("101/7,221/35,-4/35,-2/35") != std::string::npos);
  r = dispatch({"frobnicate"});
  CHECK(r.err.find("Usage") != std::string::npos);
  r = dispatch({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("survey") != std::string::npos);
}

TEST_CASE("JSON outputs round-trip through the parsers") {
  auto j = run_json({"admits", "5,7"});
  CHECK(relation_from_json(j["witness"]).values == std::array<BigInt, 4>{7, -5, -1, -1});
  j = run_json({"admits", "5", "--mode", "general:10"}, 1);
  CHECK(j["witness"].is_null());

  j = run_json({"interpolate", "-14,-15,10,9", "--ring", "5,23"});
  CHECK(verify_cycle(witness_from_json(j["witness"])).ok);
  j = run_json({"verify-cycle", "--poly", "7/11,-39/5,-146/55,-2/11", "--points", "-10,-5,-4,1", "--ring", "5,11"});
  CHECK(j["ok"] == true);
  j = run_json({"orbit", "--poly", "5,-19/3,4,-2/3", "--start", "1"});
  CHECK(orbit_from_json(j).period == 4);
  j = run_json({"zieve", "--ring", "3"});
  CHECK(j["u"] == "1");
  CHECK(relation_from_json(j["relation"]).values == std::array<BigInt, 4>{3, -1, -1, -1});
  j = run_json({"certify-avoid", "5,79", "--mode", "npower:2"});
  CHECK(reverify_certificate(certificate_from_json(j["certificate"])));
  j = run_json({"build-avoiding", "--k", "2", "--n", "2"});
  CHECK(j["primes"] == "5,79");
  j = run_json({"abc-pair", "--C", "1", "--m", "9"});
  CHECK(reverify_report(report_from_json(j)));
  CHECK(j["p1"] == "198359290373");
  j = run_json({"lenstra", "--ring", "2", "--k", "3"});
  CHECK(verify_clique(clique_from_json(j["clique"])));
  j = run_json({"lenstra", "--obstruction", "5", "--cycle-length", "6"});
  CHECK(j["z2_obstruction"]["holds"] == true);
  CHECK(j["cycle_length"]["three_smooth"] == true);
  j = run_json({"survey", "--pool", "6", "--size", "5"});
  CHECK(aggregate_from_json(j["aggregate"]).total() == 6);
}

TEST_CASE("bb-check reads relations inline and from files") {
  const auto rel = run_json({"admits", "3"})["witness"].dump();
  CHECK(dispatch({"bb-check", "--relation", rel, "--C", "1", "--eps", "1"}).exit_code == 0);
  CHECK(dispatch({"bb-check", "--relation", rel, "--C", "1/28", "--eps", "0"}).exit_code == 1);
  CHECK(dispatch({"bb-check", "--relation", "{oops", "--C", "1", "--eps", "1"}).exit_code == 2);
  const auto path = std::filesystem::temp_directory_path() / "unitcycle_rel.json";
  std::ofstream(path) << rel;
  CHECK(dispatch({"bb-check", "--relation", "@" + path.string(), "--C", "1", "--eps", "1"}).exit_code == 0);
  std::filesystem::remove(path);
}

TEST_CASE("survey writes deterministic files") {
  const auto dir = std::filesystem::temp_directory_path() / "unitcycle_cli_survey";
  std::filesystem::create_directories(dir);
  const auto csv1 = dir / "a.csv", csv2 = dir / "b.csv", svg1 = dir / "a.svg", svg2 = dir / "b.svg", agg = dir / "agg.json";
  CHECK(dispatch({"survey", "--pool", "8", "--size", "5", "--csv", csv1.string(), "--svg", svg1.string(),
                  "--aggregate-json", agg.string()})
            .exit_code == 0);
  CHECK(dispatch({"survey", "--pool", "8", "--size", "5", "--csv", csv2.string(), "--svg", svg2.string(), "--workers", "3"})
            .exit_code == 0);
  CHECK(slurp(csv1) == slurp(csv2));
  CHECK(slurp(svg1) == slurp(svg2));
  CHECK(slurp(csv1).rfind("primes;min_gap;relation_count\n2,3,5,7,11;1;484\n", 0) == 0);
  CHECK(aggregate_from_json(json::parse(slurp(agg))).total() == 56);
  CHECK(dispatch({"survey", "--pool", "12", "--size", "5", "--sample", "10", "--csv", csv1.string()}).exit_code == 0);
  CHECK(dispatch({"survey", "--pool", "12", "--size", "5", "--sample", "10", "--csv", csv2.string()}).exit_code == 0);
  CHECK(slurp(csv1) == slurp(csv2));
  std::filesystem::remove_all(dir);
}

TEST_CASE("ceiling from the environment") {
  ::setenv("UNITCYCLE_CEILING", "10", 1);
  CHECK(dispatch({"admits", "2,3,5", "--mode", "general:4"}).exit_code == 3);
  CHECK(dispatch({"--ceiling", "1000", "admits", "2,3,5", "--mode", "general:4"}).exit_code == 0);
  ::setenv("UNITCYCLE_CEILING", "junk", 1);
  CHECK(dispatch({"admits", "3"}).exit_code == 2);
  ::unsetenv("UNITCYCLE_CEILING");
  CHECK(dispatch({"admits", "2,3,5", "--mode", "general:4"}).exit_code == 0);
}
