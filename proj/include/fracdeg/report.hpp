#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracdeg {

/// Result of one property check with every intermediate that fed the verdict.
///
/// `pass` is only meaningful when `hypothesis_met`; a check whose hypothesis
/// fails is a negative control, not a failure.
struct VerificationReport {
  std::string check_id;
  std::string paper_anchor;
  bool hypothesis_met = true;
  bool pass = false;
  std::map<std::string, double> quantities;
  int skipped_probes = 0;
  std::optional<double> runtime_ms;

  bool failed() const { return hypothesis_met && !pass; }
};

/// Tags accepted in VerificationReport::paper_anchor.
const std::vector<std::string>& known_anchors();

/// Non-finite quantities are written as null and read back as NaN.
nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

/// One row per report: check_id, anchor, hypothesis_met, pass, skipped,
/// runtime (empty unless timed).
void write_summary_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

}  // namespace fracdeg
