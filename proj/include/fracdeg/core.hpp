#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fracdeg/types.hpp"

namespace fracdeg {

enum class DomainKind { ball, annulus, rectangle };

std::string to_string(DomainKind kind);

/// A ball, annulus or axis-aligned rectangle in R^n, n >= 2.
///
/// Construction validates the geometry and throws std::invalid_argument on
/// degenerate input. Values are immutable afterwards.
class Domain {
 public:
  static Domain ball(const VecX& center, double radius);
  static Domain annulus(const VecX& center, double r_inner, double r_outer);
  static Domain rectangle(const VecX& lower, const VecX& upper);

  static Domain disk(const Vec2& center, double radius) { return ball(VecX(center), radius); }

  DomainKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(center_.size()); }
  const VecX& center() const { return center_; }
  double r_inner() const { return r_inner_; }
  double r_outer() const { return r_outer_; }
  const VecX& lower() const { return lower_; }
  const VecX& upper() const { return upper_; }

  /// Lebesgue measure.
  double measure() const;
  double diameter() const;
  /// Open interior membership.
  bool contains(const Eigen::Ref<const VecX>& x) const;
  /// Distance from an interior point to the boundary; negative outside.
  double distance_to_boundary(const Eigen::Ref<const VecX>& x) const;

  /// Planar center; throws unless dim() == 2.
  Vec2 center2() const;
  void require_planar(const char* what) const;

 private:
  Domain() = default;

  DomainKind kind_ = DomainKind::ball;
  VecX center_;
  double r_inner_ = 0.0;
  double r_outer_ = 0.0;
  VecX lower_;
  VecX upper_;
};

struct GridSpec {
  int points_per_axis = 128;
  std::optional<std::uint64_t> jitter_seed;

  void validate() const;
};

enum class QuadratureScheme { tensor_midpoint, monte_carlo };

std::string to_string(QuadratureScheme scheme);
QuadratureScheme parse_scheme(const std::string& name);

/// Settings for the singular double integrals.
///
/// For tensor-midpoint, `sample_count` is the finest points-per-axis; for
/// monte-carlo it is the finest number of sampled points. When the exclusion
/// radius is unset it defaults to twice the grid spacing of each level.
struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::tensor_midpoint;
  int sample_count = 128;
  std::optional<double> diagonal_exclusion_radius;
  std::uint64_t seed = 7;

  void validate(const Domain& domain) const;
};

/// Quadrature nodes (one column per point) with weights.
struct SampleSet {
  MatX points;
  VecX weights;
  /// Nominal spacing of the generating grid.
  double spacing = 0.0;

  Eigen::Index size() const { return weights.size(); }
};

/// Interior midpoint quadrature. Planar balls and annuli use polar rings
/// (exact measure); rectangles use a tensor grid; balls and annuli in n >= 3
/// use a masked cartesian grid. Points on the boundary are never returned.
SampleSet sample_domain(const Domain& domain, const GridSpec& grid);

/// Uniform Monte-Carlo nodes with equal weights measure/count.
SampleSet sample_domain_monte_carlo(const Domain& domain, int count, std::uint64_t seed);

/// `count` equispaced points on the circle, counterclockwise from angle 0.
Points2 sample_circle(const Vec2& center, double r, int count);

struct Rule1d {
  VecX nodes;
  VecX weights;
};

/// Gauss-Legendre rule on [a, b] from the Jacobi matrix eigenproblem.
Rule1d gauss_legendre(int n, double a, double b);

/// Gauss-Legendre in the radius, trapezoid in the angle, on the disk
/// B(center, radius). Spectrally accurate for smooth integrands.
SampleSet polar_rule(const Vec2& center, double radius, int radial, int angular);

}  // namespace fracdeg
