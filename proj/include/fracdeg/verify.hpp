#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdeg/constants.hpp"
#include "fracdeg/core.hpp"
#include "fracdeg/jacobian.hpp"
#include "fracdeg/maps.hpp"
#include "fracdeg/report.hpp"
#include "fracdeg/sobolev.hpp"

namespace fracdeg {

/// Settings shared by every check of a suite run.
struct SuiteConfig {
  /// Smoothness values; the Jacobian checks need s >= n/(n+1).
  std::vector<double> s_values{0.75};
  /// Seminorm points per axis, ascending; the last one is used.
  std::vector<int> resolutions{64};
  std::vector<double> eps_seq{0.08, 0.04, 0.02};
  std::uint64_t seed = 7;
  int trace_samples = 512;
  /// Interior grid for the essential diameter.
  int interior_resolution = 128;
  double distortion_tolerance = 1e-3;
  /// Restrict the smooth gallery used by the fitted-constant checks; empty
  /// means identity, power-2, power-3, conjugation, gradient-quartic.
  std::vector<std::string> gallery;
  /// Keep only checks whose id starts with one of these; empty keeps all.
  std::vector<std::string> checks;
  FittedConstants constants;
  bool timing = false;

  /// Throws std::invalid_argument on empty or unordered lists, eps values
  /// that are not strictly decreasing, or s below n/(n+1).
  void validate(int n = 2) const;
  QuadratureSpec seminorm_quadrature() const;
  bool selected(const std::string& check_id) const;
  std::vector<std::string> smooth_gallery() const;
};

/// Unit disk, the domain of every suite check.
Domain unit_disk();

/// 5 x 5 bump family on `ball`, nudged away from declared singular points.
std::vector<TestFunction> suite_family(const MapField& f, const Domain& ball);

/// Sign classification of f on `ball` with the suite family.
SignClassification classify_on(const MapField& f, const Domain& ball, const SuiteConfig& config);

/// Oscillation profile monotone up to 40, the modulus bound, and the implied
/// modulus of continuity at five distances. Computes the classification when
/// `verdict` is not supplied.
VerificationReport continuity_certificate(const MapField& f, const Domain& ball,
                                          const FractionalParams& params,
                                          const SuiteConfig& config,
                                          std::optional<SignVerdict> verdict = std::nullopt);

/// For a curl-free map with Jac >= 0, every distortion f_delta has positive
/// evidence and a passing certificate whose seminorm stays below
/// [f] + |delta| [id].
VerificationReport theorem2_pathway_check(const MapField& f, const std::vector<double>& deltas,
                                          const SuiteConfig& config);

/// Every acceptance check, sorted by check_id. Failures are recorded in the
/// reports; exceptions inside a check become a failed report.
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

/// Fits the constant table on the smooth gallery at `resolution`.
FittedConstants calibrate(const SuiteConfig& config, int resolution = 128);

/// JSON array of reports.
nlohmann::json suite_to_json(const std::vector<VerificationReport>& reports);

}  // namespace fracdeg
