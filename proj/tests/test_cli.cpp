#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eeg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eeg::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  std::string l;
  while (std::getline(is, l)) {
    if (l == line) return true;
  }
  return false;
}

const std::string kPlp = R"({"family":"power_law_product","gamma":2.5,"n_max":200})";
const std::string kEdge = R"({"family":"explicit","edges":[[1,2,1.0]]})";

}  // namespace

TEST_CASE("every output starts with the provenance header") {
  const Result r = run_cli({"series", "--measure", kPlp, "--window", "200", "--seed", "4"});
  CHECK(r.code == eeg::cli::kExitOk);
  CHECK(r.out.rfind("# command: series\n", 0) == 0);
  CHECK(r.out.find("# config_hash: ") != std::string::npos);
  CHECK(has_line(r.out, "# seed: 4"));
  CHECK(has_line(r.out, "# window: 200"));
  CHECK(r.out.find("# version: ") != std::string::npos);
  CHECK(has_line(r.out, "# threads: 1"));
  CHECK(has_line(r.out, "verdict: converges-analytic"));

  const Result again = run_cli({"series", "--measure", kPlp, "--window", "200", "--seed", "4"});
  CHECK(again.out == r.out);
}

TEST_CASE("simulate writes a trajectory for one edge") {
  const Result r = run_cli(
      {"simulate", "--measure", kEdge, "--horizon-t", "100", "--format", "csv", "--seed", "7"});
  REQUIRE(r.code == 0);
  const std::string header = "index,time,i,j,new_vertices,new_component\n";
  const auto pos = r.out.find(header);
  REQUIRE(pos != std::string::npos);
  const std::string row = r.out.substr(pos + header.size());
  CHECK(row.rfind("1,", 0) == 0);
  CHECK(row.find(",1,2,2,1\n") != std::string::npos);

  const Result discrete = run_cli({"simulate", "--measure", kEdge, "--horizon-n", "3"});
  CHECK(discrete.code == 0);
  CHECK(has_line(discrete.out, "events: 3"));
}

TEST_CASE("configuration errors exit with code 2 and name the field") {
  Result r = run_cli({"series", "--measure", R"({"family":"nope"})"});
  CHECK(r.code == eeg::cli::kExitConfigError);
  CHECK(r.err.find("family") != std::string::npos);

  r = run_cli({"simulate", "--measure", kEdge});
  CHECK(r.code == 2);
  CHECK(r.err.find("horizon") != std::string::npos);

  r = run_cli({"simulate", "--measure", kEdge, "--horizon-t", "1", "--format", "xml"});
  CHECK(r.code == 2);
  CHECK(r.err.find("format") != std::string::npos);

  r = run_cli({"analytic", "--measure", kEdge, "--edge", "1,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("edge") != std::string::npos);

  r = run_cli({"bogus"});
  CHECK(r.code == 2);

  r = run_cli({"simulate", "--horizon-t", "1"});
  CHECK(r.code == 2);
}

TEST_CASE("analytic reports closed forms") {
  const std::string path = R"({"family":"explicit","edges":[[1,2,1],[2,3,1],[3,4,1]],"normalize":true})";
  const Result r = run_cli({"analytic", "--measure", path, "--edge", "1,2", "--edge2", "3,4",
                            "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("P_I_e_and_I_f,0.3333333333333333") != std::string::npos);
  CHECK(r.out.find("joint_ratio_closed_form,0.75") != std::string::npos);
}

TEST_CASE("urns and complete commands") {
  Result r = run_cli({"urns", "--sequence", "geometric", "--ratio", "0.5", "--blocks", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("partial_product: 0.0009765625") != std::string::npos);

  r = run_cli({"urns", "--block", "1", "--tail", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("factor: 0.25") != std::string::npos);

  r = run_cli({"complete", "--measure", R"({"family":"factorial_max","n_max":8})"});
  REQUIRE(r.code == 0);
  CHECK(has_line(r.out, "verdict: positive-analytic"));
}

TEST_CASE("couple writes a trace or a frequency") {
  const std::string plp = R"({"family":"power_law_product","gamma":2.5,"n_max":6})";
  Result r = run_cli({"couple", "--measure", plp, "--horizon-t", "5", "--replicas", "1",
                      "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("step,clock,chi_kind,chi_value,branch_color,V_size,U_size,V_eq_U") !=
        std::string::npos);
  r = run_cli({"couple", "--measure", plp, "--horizon-t", "5", "--replicas", "200",
               "--audit-states", "50"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("V_eq_U_frequency: ") != std::string::npos);
}

TEST_CASE("output file option") {
  const std::string file = "cli_test_output.txt";
  std::remove(file.c_str());
  const Result r = run_cli({"series", "--measure", kPlp, "--out", file});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().rfind("# command: series", 0) == 0);
  std::remove(file.c_str());
}

TEST_CASE("verify passes on the default seed") {
  const Result r = run_cli({"verify", "--suite", "analytic", "--replicas", "20000"});
  CHECK(r.code == eeg::cli::kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("summary: 5/5 passed") != std::string::npos);
}
