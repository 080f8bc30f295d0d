#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const auto path = std::filesystem::temp_directory_path() / "fracdeg_cli_test.out";
  const std::string cmd = std::string(FRACDEG_CLI_PATH) + " " + args + " > " + path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::filesystem::remove(path);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

}  // namespace

TEST_CASE("cli degree") {
  const Run r = run("degree --map power-3");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["degree"] == 3);
  CHECK(j["trusted"] == true);
  CHECK(nlohmann::json::parse(run("degree --map conjugation").out)["degree"] == -1);
  CHECK(nlohmann::json::parse(run("degree --map power --k -2").out)["degree"] == -2);
}

TEST_CASE("cli help and usage errors") {
  CHECK(run("--help").code == 0);
  for (const auto* sub : {"seminorm", "trace", "degree", "jacobian", "curl", "classify", "check", "suite",
                          "calibrate", "gallery"})
    CHECK(run(std::string(sub) + " --help").code == 0);
  CHECK(run("degree --bogus").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("degree --map spiral").code == 1);
  CHECK(run("suite --s 0.5").code == 1);
  CHECK(run("check no-such-check").code == 1);
  CHECK(run("degree --format xml").code == 1);
}

TEST_CASE("cli check is reproducible") {
  const Run a = run("check auxfn");
  const Run b = run("check auxfn");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out).size() == 2);
  const Run csv = run("check auxfn --format csv");
  CHECK(csv.out.rfind("check_id,", 0) == 0);
}

TEST_CASE("cli gallery list and pairings") {
  const Run g = run("gallery list");
  CHECK(g.code == 0);
  CHECK(g.out.find("\nconjugated-power\n") != std::string::npos);
  CHECK(g.out.find("loglog") != std::string::npos);
  const auto jac = nlohmann::json::parse(run("jacobian --map identity --phi-radius 0.3").out);
  CHECK(std::abs(jac["pairing"].get<double>() - jac["phi_integral"].get<double>()) < 1e-8);
  const auto cls = nlohmann::json::parse(run("classify --map conjugation").out);
  CHECK(cls["verdict"] == "sign-changing");
}
