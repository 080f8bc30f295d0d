#include "fracdeg/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace fracdeg {

const std::vector<std::string>& known_anchors() {
  static const std::vector<std::string> anchors = {
      "winding-number",         "loglog-counterexample",   "auxiliary-d-profile",
      "auxiliary-pi-profile",   "rotation-distortion",     "degree-monotonicity",
      "degree-nonnegativity",   "sense-preserving",        "essential-diameter",
      "restriction-inequality", "jacobian-apriori-bound",  "extension-energy",
      "oscillation-modulus",    "numerical-hygiene",       "continuity-certificate",
      "curl-free-continuity",   "sign-classification",     "curl-pairing"};
  return anchors;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["check_id"] = report.check_id;
  j["paper_anchor"] = report.paper_anchor;
  j["hypothesis_met"] = report.hypothesis_met;
  j["pass"] = report.pass;
  j["quantities"] = nlohmann::json::object();
  for (const auto& [k, v] : report.quantities)
    j["quantities"][k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  j["skipped_probes"] = report.skipped_probes;
  if (report.runtime_ms) j["runtime_ms"] = *report.runtime_ms;
  return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.paper_anchor = j.at("paper_anchor").get<std::string>();
  r.hypothesis_met = j.at("hypothesis_met").get<bool>();
  r.pass = j.at("pass").get<bool>();
  for (const auto& [k, v] : j.at("quantities").items())
    r.quantities[k] = v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  r.skipped_probes = j.at("skipped_probes").get<int>();
  if (j.contains("runtime_ms")) r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
}

void write_summary_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "check_id,paper_anchor,hypothesis_met,pass,skipped_probes,runtime_ms\n";
  for (const auto& r : reports) {
    out << r.check_id << ',' << r.paper_anchor << ',' << (r.hypothesis_met ? "true" : "false")
        << ',' << (r.pass ? "true" : "false") << ',' << r.skipped_probes << ',';
    if (r.runtime_ms) out << *r.runtime_ms;
    out << '\n';
  }
}

}  // namespace fracdeg
