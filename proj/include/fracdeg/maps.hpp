#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracdeg/core.hpp"
#include "fracdeg/types.hpp"

namespace fracdeg {

enum class Smoothness { smooth, singular_at_points, discontinuous };

std::string to_string(Smoothness s);

/// An evaluatable planar map f: Omega -> R^2.
///
/// `differential`, when set, is the exact Df. Both callables must be
/// re-entrant; a MapField is shared freely between workers.
struct MapField {
  std::function<Vec2(const Vec2&)> evaluate;
  std::function<Mat2(const Vec2&)> differential;
  std::string label;
  Smoothness smoothness = Smoothness::smooth;
  std::vector<Vec2> singular_points;

  Vec2 operator()(const Vec2& x) const { return evaluate(x); }
  bool has_differential() const { return static_cast<bool>(differential); }
  bool is_singular(const Vec2& x, double tol = 1e-12) const;
};

struct MapParams {
  int k = 2;
  Vec2 constant = Vec2(2.0, 0.0);
  double delta = 1.0;
  /// Wraps the selected map as f + distortion * (-y, x) when set.
  std::optional<double> distortion;
};

/// Canonical gallery names, in listing order.
const std::vector<std::string>& gallery_names();

/// Builds a gallery map. Accepts the canonical names plus the aliases
/// `power-<k>`, `conjugated-power-<k>`, `loglog-counterexample`.
/// Throws std::invalid_argument for unknown names or k = 0.
MapField gallery(std::string_view name, const MapParams& params = {});

/// f_delta(x) = f(x) + delta * (-x2, x1).
MapField distort(const MapField& f, double delta);

/// lambda * f.
MapField scaled(const MapField& f, double lambda);

/// Central-difference Jacobian matrix with step h.
Mat2 finite_difference_differential(const MapField& f, const Vec2& x, double h);

/// det Df(x): exact differential when available, central differences otherwise.
/// Throws std::domain_error at a declared singular point.
double jacobian_det(const MapField& f, const Vec2& x, double h = 1e-5);

/// Non-negative smooth bump amplitude * exp(-1 / (1 - |x - c|^2 / rho^2)),
/// supported in B(center, radius).
class TestFunction {
 public:
  TestFunction(const Vec2& center, double radius, double amplitude = 1.0);

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }
  double amplitude() const { return amplitude_; }

  double operator()(const Vec2& x) const;
  Vec2 gradient(const Vec2& x) const;

 private:
  Vec2 center_;
  double radius_;
  double amplitude_;
};

/// A per_axis x per_axis lattice of bumps with radius radius_fraction * R
/// and spacing 0.2 * R inside the planar ball `domain` of radius R. Bumps
/// whose support comes within `margin` of `avoid` are pushed away from it.
std::vector<TestFunction> bump_family(const Domain& domain, int per_axis = 5,
                                      double radius_fraction = 0.15,
                                      std::optional<Vec2> avoid = std::nullopt,
                                      double margin = 0.0);

struct MollifierSpec {
  double epsilon = 0.04;
  int kernel_sample_count = 16;
};

/// f * eta_eps with the standard bump kernel normalized to unit discrete mass.
///
/// The result is valid on `region` shrunk by epsilon; evaluating outside it
/// throws std::domain_error. Throws std::invalid_argument when the shrunk
/// region is empty. The differential of the result is (Df) * eta when f has
/// an exact differential and f * (grad eta) otherwise.
MapField mollify(const MapField& f, const MollifierSpec& spec, const Domain& region);

/// f sampled at `count` equispaced counterclockwise angles on a circle.
struct CircleTrace {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
  Points2 samples;
  std::string map_label;

  Eigen::Index size() const { return samples.cols(); }
};

/// Requires count >= 32.
CircleTrace trace_circle(const MapField& f, const Vec2& center, double r, int count);

/// Largest pairwise distance of a planar point cloud (convex hull + scan).
double image_diameter(const Points2& points);

/// Oscillation of f on the circle: diameter of its sampled image.
double trace_oscillation(const MapField& f, const Vec2& center, double r, int count);

}  // namespace fracdeg
