#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fracdeg/constants.hpp"
#include "fracdeg/core.hpp"
#include "fracdeg/maps.hpp"
#include "fracdeg/report.hpp"

namespace fracdeg {

/// Smoothness s in (0,1), integrability p > 1 and ambient dimension n.
struct FractionalParams {
  double s = 0.75;
  double p = 8.0 / 3.0;
  int n = 2;

  /// The critical pair (s, n/s).
  static FractionalParams critical(double s, int n = 2) { return {s, n / s, n}; }

  void validate() const;
  /// Throws unless s - 1/p > 0.
  void require_trace() const;
};

struct SeminormEstimate {
  double value = 0.0;
  QuadratureSpec scheme;
  /// Estimates at increasing resolution; the last entry equals `value`.
  std::vector<double> refinement_trend;
};

/// Pair sums sum_{i != j} w_i w_j |v_i - v_j|^p / |x_i - x_j|^{n+sp} over
/// pairs with |x_i - x_j| >= delta and >= 2 delta respectively.
struct ExclusionSums {
  double at_delta = 0.0;
  double at_double = 0.0;
  long long pairs = 0;
};

/// `values` holds one column per sample point; any number of rows.
ExclusionSums gagliardo_pair_sums(const SampleSet& samples, const MatX& values,
                                  const FractionalParams& params, double delta);

/// Removes the leading cutoff bias, which scales like delta^{p(1-s)} for
/// smooth integrands, from the two exclusion radii. Returns the p-th power.
double extrapolate_exclusion(const ExclusionSums& sums, const FractionalParams& params);

/// Gagliardo seminorm of a planar map over a domain.
/// Throws std::runtime_error when diagonal exclusion leaves no pairs.
SeminormEstimate gagliardo_seminorm(const MapField& f, const Domain& domain,
                                    const FractionalParams& params, const QuadratureSpec& quad);

/// Scalar seminorm of a test function.
SeminormEstimate gagliardo_seminorm(const TestFunction& phi, const Domain& domain,
                                    const FractionalParams& params, const QuadratureSpec& quad);

/// Seminorm of a vector field on a domain of any dimension; `f` maps the
/// dim x m point matrix to a k x m value matrix.
SeminormEstimate gagliardo_seminorm(const std::function<MatX(const MatX&)>& f,
                                    const Domain& domain, const FractionalParams& params,
                                    const QuadratureSpec& quad);

/// Discrete Gagliardo seminorm on the sampled circle with geodesic distance.
/// Requires at least 32 samples.
double circle_seminorm(const CircleTrace& trace, const FractionalParams& params);

/// Compares (int_0^R [f]^p_{dB(r)} dr)^{1/p} against [f]_{W^{s,p}(B(R))}.
VerificationReport restriction_inequality_check(const MapField& f, const Domain& ball,
                                                const FractionalParams& params, int radii_count,
                                                const QuadratureSpec& quad,
                                                const FittedConstants& constants,
                                                int circle_samples = 512);

struct ExtensionTruncation {
  /// Largest t; zero selects the domain diameter.
  double height = 0.0;
  /// Source and evaluation grid points per axis; t_min is the source spacing.
  int resolution = 48;
  int t_levels = 24;
};

/// Smooth radial cutoff: 1 on |x - c| <= R, 0 on |x - c| >= 2R.
MapField cutoff_extension(const MapField& f, const Domain& ball);

/// Weighted energy int |t^{1-1/p-s} DF|^p of the Poisson extension F of the
/// cut-off map over the truncated half space t in (t_min, T).
double halfspace_extension_energy(const MapField& f, const Domain& ball,
                                  const FractionalParams& params,
                                  const ExtensionTruncation& truncation);

/// Band check on (E / [f]^p)^{n/p}, which is E^s / [f]^n at the critical
/// exponent.
VerificationReport extension_energy_check(const MapField& f, const Domain& ball,
                                          const FractionalParams& params,
                                          const ExtensionTruncation& truncation,
                                          const QuadratureSpec& quad,
                                          const FittedConstants& constants);

/// Default (r, R) pairs inside a ball of the given radius.
std::vector<std::pair<double, double>> modulus_radius_pairs(double ball_radius, int pair_count);

/// osc(dB(r))^p log(R/r) <= C [f]^p_{W^{s,p}(B(R))} for each radius pair,
/// with oscillation measured as the trace image diameter.
VerificationReport modulus_bound_check(const MapField& f, const Domain& ball,
                                       const FractionalParams& params, int pair_count,
                                       const QuadratureSpec& quad,
                                       const FittedConstants& constants,
                                       int circle_samples = 512);

}  // namespace fracdeg
