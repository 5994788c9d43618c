#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("creepsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run creepsim(const std::string& args) {
  const auto out = fs::temp_directory_path() / "creepsim_cli_stdout.txt";
  const std::string cmd = std::string("\"") + CREEPSIM_PATH + "\" " + args + " --golden-dir \"" +
                          CREEP_GOLDEN_DIR + "\" > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

std::string golden_text(const std::string& file) { return slurp(fs::path(CREEP_GOLDEN_DIR) / file); }

}  // namespace

TEST_CASE("unknown scenario exits 3") {
  CHECK(creepsim("simulate no_such_scenario").code == 3);
  CHECK(creepsim("compare no_such_scenario").code == 3);
}

TEST_CASE("invalid configs exit 4") {
  const auto dir = scratch("invalid");
  std::ofstream(dir / "broken.yaml") << "name: [unclosed\n";
  CHECK(creepsim("simulate \"" + (dir / "broken.yaml").string() + "\"").code == 4);

  std::ofstream(dir / "extra.yaml") << golden_text("01_stable_half.yaml") << "surprise: 1\n";
  CHECK(creepsim("simulate \"" + (dir / "extra.yaml").string() + "\"").code == 4);

  CHECK(creepsim("simulate stable_half --paths 0").code == 4);
  CHECK(creepsim("ou stable_half --paths 10").code == 4);
}

TEST_CASE("unconverged quadrature exits 5") {
  const auto dir = scratch("quad");
  std::ofstream(dir / "tight.yaml") << golden_text("01_stable_half.yaml")
                                    << "quadrature:\n  abs_tol: 1.0e-14\n  max_panels: 1\n";
  CHECK(creepsim("quadrature \"" + (dir / "tight.yaml").string() + "\"").code == 5);
}

TEST_CASE("list prints the catalog with anchors") {
  const auto r = creepsim("list");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int names = 0;
  int anchors = 0;
  while (std::getline(in, line)) {
    if (line.find("  [") != std::string::npos && line.rfind("  ", 0) != 0) ++names;
    else if (line.rfind("    ", 0) == 0 && line.find("expected:") == std::string::npos && line.size() > 8) ++anchors;
  }
  CHECK(names >= 10);
  CHECK(anchors == names);
}

TEST_CASE("quadrature prints the analytic value") {
  const auto r = creepsim("quadrature stable_half");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["scenario"] == "stable_half");
  CHECK(j["analytic"]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("simulate writes summary and outcomes and is reproducible") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  const auto ra = creepsim("simulate stable_half --paths 2000 --seed 7 --workers 1 --out-dir \"" + a.string() + "\"");
  const auto rb = creepsim("simulate stable_half --paths 2000 --seed 7 --workers 3 --out-dir \"" + b.string() + "\"");
  CHECK((ra.code == 0 || ra.code == 1));
  CHECK(ra.code == rb.code);
  CHECK(fs::exists(a / "stable_half.summary.json"));
  CHECK(fs::exists(a / "stable_half.outcomes.csv"));
  CHECK(slurp(a / "stable_half.summary.json") == slurp(b / "stable_half.summary.json"));
  CHECK(slurp(a / "stable_half.outcomes.csv") == slurp(b / "stable_half.outcomes.csv"));
  const auto j = nlohmann::json::parse(slurp(a / "stable_half.summary.json"));
  CHECK(j["mc"]["n_paths"].get<int>() == 2000);
}

TEST_CASE("csv format") {
  const auto r = creepsim("simulate cp_level --paths 500 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("scenario,verdict,p_hat,ci_low,ci_high,analytic,abs_error\n", 0) == 0);
  CHECK(r.out.find("\ncp_level,") != std::string::npos);
}

TEST_CASE("compare exit code follows the verdict") {
  CHECK(creepsim("compare cp_level --paths 20000").code == 0);
}
