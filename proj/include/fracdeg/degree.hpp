#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "fracdeg/core.hpp"
#include "fracdeg/jacobian.hpp"
#include "fracdeg/maps.hpp"
#include "fracdeg/report.hpp"

namespace fracdeg {

struct DegreeResult {
  int degree = 0;
  /// Distance from p to the sampled boundary image.
  double min_distance = 0.0;
  /// |sum of angle increments - 2 pi degree|.
  double angle_residual = 0.0;
  /// Largest |angle increment|; below pi/2 the sampling resolves the winding.
  double max_increment = 0.0;
  bool trusted = false;
};

/// Winding number of the closed sampled curve around p.
/// Throws std::domain_error when a sample coincides with p.
DegreeResult winding_degree(const CircleTrace& trace, const Vec2& p);

/// per_axis x per_axis probes spanning the bounding box of the trace image,
/// corners included.
Points2 probe_grid(const CircleTrace& boundary, int per_axis = 7);

/// Probes closer than this to a boundary image are skipped: 2% of its diameter.
double probe_margin(const CircleTrace& boundary);

/// deg(f, B(x0, r), p) <= deg(f, B(x0, R), p) at every admissible probe.
/// `verdict` is the caller's sign classification on the enclosing ball; the
/// check is a negative control unless it supports Jac(f) >= 0.
VerificationReport degree_monotonicity_check(const MapField& f, const Vec2& x0, double r,
                                             double R, const Points2& probes, int samples,
                                             SignVerdict verdict);

/// deg(f, B(x0, R), p) >= 0 at every admissible probe.
VerificationReport degree_nonnegativity_check(const MapField& f, const Vec2& x0, double R,
                                              const Points2& probes, int samples,
                                              SignVerdict verdict);

/// deg(f, B, p) >= 1 for every probe in f(B) away from f(dB). Membership is
/// decided against an interior image sample refined until its covering
/// radius is below half the probe margin. Needs positive evidence.
VerificationReport sense_preserving_check(const MapField& f, const Domain& ball,
                                          const Points2& probes, int samples,
                                          SignVerdict verdict);

/// diam f(B) <= 2 * 20 * diam f(dB), with the interior image sampled on
/// `interior` and declared singular points ignored. Needs positive evidence.
VerificationReport essential_diameter_check(const MapField& f, const Domain& ball,
                                            const GridSpec& interior, int samples,
                                            SignVerdict verdict);

/// (r, osc over the circle of radius r) for increasing radii.
std::vector<std::pair<double, double>> oscillation_profile(const MapField& f, const Vec2& x0,
                                                           const std::vector<double>& radii,
                                                           int samples);

/// osc(r) <= lambda * osc(rho) whenever r < rho.
bool lambda_monotone(const std::vector<std::pair<double, double>>& profile, double lambda = 40.0);

/// angle,f1,f2 rows.
void write_trace_csv(std::ostream& out, const CircleTrace& trace);

}  // namespace fracdeg
