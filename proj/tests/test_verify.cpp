#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "fracdeg/verify.hpp"

using namespace fracdeg;

namespace {

SuiteConfig only(std::vector<std::string> prefixes) {
  SuiteConfig c;
  c.checks = std::move(prefixes);
  return c;
}

}  // namespace

TEST_CASE("suite configuration validation") {
  SuiteConfig c;
  CHECK_NOTHROW(c.validate());
  c.s_values = {0.5};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_suite(c), std::invalid_argument);
  c = SuiteConfig{};
  c.resolutions = {64, 32};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SuiteConfig{};
  c.eps_seq = {0.02, 0.04, 0.08};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SuiteConfig{};
  c.eps_seq = {0.2, 0.1, 0.05};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("check selection by prefix") {
  const SuiteConfig c = only({"auxfn"});
  CHECK(c.selected("auxfn.d-profile"));
  CHECK_FALSE(c.selected("degree.winding.power-1"));
  CHECK(SuiteConfig{}.selected("anything"));
  CHECK(SuiteConfig{}.smooth_gallery().size() == 5);
}

TEST_CASE("auxiliary function checks") {
  const auto reports = run_suite(only({"auxfn"}));
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].check_id == "auxfn.d-profile");
  CHECK(reports[1].check_id == "auxfn.pi-profile");
  for (const auto& r : reports) {
    CHECK(r.pass);
    CHECK(r.quantities.at("violations") == 0.0);
    CHECK_FALSE(r.runtime_ms);
  }
}

TEST_CASE("winding checks and report serialization") {
  SuiteConfig c = only({"degree.winding"});
  c.timing = true;
  const auto reports = run_suite(c);
  CHECK(reports.size() == 7);
  CHECK(std::is_sorted(reports.begin(), reports.end(),
                       [](const auto& a, const auto& b) { return a.check_id < b.check_id; }));
  for (const auto& r : reports) {
    CHECK(r.pass);
    REQUIRE(r.runtime_ms);
    CHECK(std::find(known_anchors().begin(), known_anchors().end(), r.paper_anchor) != known_anchors().end());
    const VerificationReport back = report_from_json(to_json(r));
    CHECK(back.check_id == r.check_id);
    CHECK(back.quantities == r.quantities);
    CHECK(back.pass == r.pass);
    CHECK(back.runtime_ms == r.runtime_ms);
  }
}

TEST_CASE("constants round trip") {
  FittedConstants c;
  CHECK_FALSE(c.calibrated());
  const FittedConstants uncal = constants_from_json(to_json(c));
  CHECK(std::isinf(uncal.restriction));
  CHECK(to_json(c)["restriction"].is_null());
  c.version = 1;
  c.restriction = 0.8;
  c.energy_lo = 0.7;
  c.energy_hi = 1.5;
  c.note = "test";
  const auto path = std::filesystem::temp_directory_path() / "fracdeg_constants_test.json";
  save_constants(c, path.string());
  const FittedConstants back = load_constants(path.string());
  std::filesystem::remove(path);
  CHECK(back.calibrated());
  CHECK(back.restriction == 0.8);
  CHECK(back.note == "test");
  CHECK(back.within_band(1.6));
  CHECK_FALSE(back.within_band(1.7));
  CHECK(back.within_upper(0.87, back.restriction));
  CHECK_FALSE(back.within_upper(0.9, back.restriction));
}

TEST_CASE("shipped constants are calibrated") {
  const FittedConstants c = load_constants(default_constants_path());
  CHECK(c.calibrated());
  CHECK(std::isfinite(c.restriction));
  CHECK(c.energy_lo <= c.energy_hi);
}

TEST_CASE("continuity certificate controls") {
  const SuiteConfig c;
  const FractionalParams params = FractionalParams::critical(0.75);
  const auto id = continuity_certificate(gallery("identity"), unit_disk(), params, c);
  CHECK(id.hypothesis_met);
  CHECK(id.pass);
  CHECK(id.quantities.at("osc_monotone") == 1.0);
  const auto ll = continuity_certificate(gallery("loglog"), unit_disk(), params, c);
  CHECK_FALSE(ll.hypothesis_met);
  CHECK_FALSE(ll.failed());
}

TEST_CASE("curl-free pathway rejects a rotation") {
  const SuiteConfig c;
  MapParams p;
  p.delta = 0.2;
  const auto rot = theorem2_pathway_check(gallery("rotation", p), {0.3}, c);
  CHECK_FALSE(rot.hypothesis_met);
  CHECK(rot.quantities.at("max_relative_curl") > 1e-8);
}

TEST_CASE("suite output is deterministic") {
  SuiteConfig c = only({"auxfn", "degree.winding", "jacobian.sign.power-2"});
  const std::string a = suite_to_json(run_suite(c)).dump();
  const std::string b = suite_to_json(run_suite(c)).dump();
  CHECK(a == b);
}
