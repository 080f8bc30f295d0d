#include "fracdeg/core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace fracdeg {

namespace {

constexpr double kPi = std::numbers::pi;

// Volume of the unit ball in R^n.
double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::ball:
      return "ball";
    case DomainKind::annulus:
      return "annulus";
    case DomainKind::rectangle:
      return "rectangle";
  }
  return "unknown";
}

Domain Domain::ball(const VecX& center, double radius) {
  return annulus(center, 0.0, radius);
}

Domain Domain::annulus(const VecX& center, double r_inner, double r_outer) {
  if (center.size() < 2) throw std::invalid_argument("domain dimension must be at least 2");
  if (!(r_outer > 0.0) || !(r_inner >= 0.0) || !(r_inner < r_outer))
    throw std::invalid_argument("annulus radii must satisfy 0 <= r_inner < r_outer");
  if (!center.allFinite()) throw std::invalid_argument("domain center must be finite");
  Domain d;
  d.kind_ = r_inner == 0.0 ? DomainKind::ball : DomainKind::annulus;
  d.center_ = center;
  d.r_inner_ = r_inner;
  d.r_outer_ = r_outer;
  d.lower_ = center.array() - r_outer;
  d.upper_ = center.array() + r_outer;
  return d;
}

Domain Domain::rectangle(const VecX& lower, const VecX& upper) {
  if (lower.size() < 2 || lower.size() != upper.size())
    throw std::invalid_argument("rectangle corners must share a dimension >= 2");
  if (!((upper - lower).array() > 0.0).all())
    throw std::invalid_argument("rectangle extents must be strictly positive");
  Domain d;
  d.kind_ = DomainKind::rectangle;
  d.lower_ = lower;
  d.upper_ = upper;
  d.center_ = 0.5 * (lower + upper);
  return d;
}

double Domain::measure() const {
  if (kind_ == DomainKind::rectangle) return (upper_ - lower_).prod();
  const int n = dim();
  return unit_ball_volume(n) * (std::pow(r_outer_, n) - std::pow(r_inner_, n));
}

double Domain::diameter() const {
  if (kind_ == DomainKind::rectangle) return (upper_ - lower_).norm();
  return 2.0 * r_outer_;
}

bool Domain::contains(const Eigen::Ref<const VecX>& x) const {
  return distance_to_boundary(x) > 0.0;
}

double Domain::distance_to_boundary(const Eigen::Ref<const VecX>& x) const {
  if (x.size() != center_.size()) throw std::invalid_argument("point dimension mismatch");
  if (kind_ == DomainKind::rectangle) {
    return std::min((x - lower_).minCoeff(), (upper_ - x).minCoeff());
  }
  const double rho = (x - center_).norm();
  const double outer = r_outer_ - rho;
  if (kind_ == DomainKind::ball) return outer;
  return std::min(outer, rho - r_inner_);
}

Vec2 Domain::center2() const {
  require_planar("planar center");
  return Vec2(center_(0), center_(1));
}

void Domain::require_planar(const char* what) const {
  if (dim() != 2) throw std::invalid_argument(std::string(what) + " requires a planar domain");
}

void GridSpec::validate() const {
  if (points_per_axis < 4) throw std::invalid_argument("grid needs at least 4 points per axis");
}

std::string to_string(QuadratureScheme scheme) {
  return scheme == QuadratureScheme::tensor_midpoint ? "tensor-midpoint" : "monte-carlo";
}

QuadratureScheme parse_scheme(const std::string& name) {
  if (name == "tensor-midpoint" || name == "tensor") return QuadratureScheme::tensor_midpoint;
  if (name == "monte-carlo" || name == "mc") return QuadratureScheme::monte_carlo;
  throw std::invalid_argument("unknown quadrature scheme: " + name);
}

void QuadratureSpec::validate(const Domain& domain) const {
  if (sample_count < 16) throw std::invalid_argument("quadrature sample_count must be >= 16");
  if (diagonal_exclusion_radius) {
    const double r = *diagonal_exclusion_radius;
    if (!(r > 0.0)) throw std::invalid_argument("diagonal exclusion radius must be positive");
    if (!(r < domain.diameter()))
      throw std::invalid_argument("diagonal exclusion radius must be below the domain diameter");
  }
}

namespace {

SampleSet polar_midpoint(const Domain& d, int n, std::mt19937_64* rng) {
  const double h = 2.0 * d.r_outer() / n;
  const int rings = std::max(1, static_cast<int>(std::lround((d.r_outer() - d.r_inner()) / h)));
  const double dr = (d.r_outer() - d.r_inner()) / rings;
  std::vector<int> per_ring(rings);
  Eigen::Index total = 0;
  for (int i = 0; i < rings; ++i) {
    const double r = d.r_inner() + (i + 0.5) * dr;
    per_ring[i] = std::max(8, static_cast<int>(std::ceil(2.0 * kPi * r / dr)));
    total += per_ring[i];
  }
  SampleSet out;
  out.points.resize(2, total);
  out.weights.resize(total);
  out.spacing = dr;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec2 c = d.center2();
  Eigen::Index k = 0;
  for (int i = 0; i < rings; ++i) {
    const double r = d.r_inner() + (i + 0.5) * dr;
    const double dtheta = 2.0 * kPi / per_ring[i];
    const double offset = rng ? unit(*rng) : 0.5;
    const double w = r * dr * dtheta;
    for (int j = 0; j < per_ring[i]; ++j, ++k) {
      const double theta = (j + offset) * dtheta;
      out.points.col(k) = c + r * Vec2(std::cos(theta), std::sin(theta));
      out.weights(k) = w;
    }
  }
  return out;
}

// Tensor midpoint grid over the bounding box, keeping interior points only.
SampleSet cartesian_midpoint(const Domain& d, int n, std::mt19937_64* rng) {
  const int dim = d.dim();
  const VecX h = (d.upper() - d.lower()) / n;
  const double cell = h.prod();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coords;
  std::vector<int> index(dim, 0);
  VecX x(dim);
  bool done = false;
  while (!done) {
    for (int a = 0; a < dim; ++a) {
      const double u = rng ? unit(*rng) : 0.5;
      x(a) = d.lower()(a) + (index[a] + u) * h(a);
    }
    if (d.contains(x)) coords.insert(coords.end(), x.data(), x.data() + dim);
    int a = 0;
    while (a < dim && ++index[a] == n) index[a++] = 0;
    done = a == dim;
  }
  SampleSet out;
  const auto m = static_cast<Eigen::Index>(coords.size() / dim);
  out.points = Eigen::Map<const MatX>(coords.data(), dim, m);
  out.weights = VecX::Constant(m, cell);
  out.spacing = h.maxCoeff();
  return out;
}

}  // namespace

SampleSet sample_domain(const Domain& domain, const GridSpec& grid) {
  grid.validate();
  std::optional<std::mt19937_64> rng;
  if (grid.jitter_seed) rng.emplace(*grid.jitter_seed);
  std::mt19937_64* gen = rng ? &*rng : nullptr;
  if (domain.kind() != DomainKind::rectangle && domain.dim() == 2)
    return polar_midpoint(domain, grid.points_per_axis, gen);
  return cartesian_midpoint(domain, grid.points_per_axis, gen);
}

SampleSet sample_domain_monte_carlo(const Domain& domain, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("Monte-Carlo sample count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int dim = domain.dim();
  SampleSet out;
  out.points.resize(dim, count);
  VecX x(dim);
  for (int k = 0; k < count;) {
    for (int a = 0; a < dim; ++a)
      x(a) = domain.lower()(a) + unit(rng) * (domain.upper()(a) - domain.lower()(a));
    if (domain.contains(x)) out.points.col(k++) = x;
  }
  out.weights = VecX::Constant(count, domain.measure() / count);
  out.spacing = std::pow(domain.measure() / count, 1.0 / dim);
  return out;
}

Points2 sample_circle(const Vec2& center, double r, int count) {
  if (count < 8) throw std::invalid_argument("circle sampling needs at least 8 points");
  if (!(r > 0.0)) throw std::invalid_argument("circle radius must be positive");
  Points2 pts(2, count);
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * kPi * k / count;
    pts.col(k) = center + r * Vec2(std::cos(theta), std::sin(theta));
  }
  return pts;
}

Rule1d gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  MatX jacobi = MatX::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<MatX> eig(jacobi);
  Rule1d rule;
  const double half = 0.5 * (b - a);
  rule.nodes = (eig.eigenvalues().array() + 1.0) * half + a;
  rule.weights = 2.0 * eig.eigenvectors().row(0).transpose().array().square() * half;
  return rule;
}

SampleSet polar_rule(const Vec2& center, double radius, int radial, int angular) {
  if (!(radius > 0.0)) throw std::invalid_argument("polar rule radius must be positive");
  const Rule1d r = gauss_legendre(radial, 0.0, radius);
  const double dtheta = 2.0 * kPi / angular;
  SampleSet out;
  out.points.resize(2, static_cast<Eigen::Index>(radial) * angular);
  out.weights.resize(out.points.cols());
  out.spacing = radius / radial;
  Eigen::Index k = 0;
  for (int i = 0; i < radial; ++i) {
    for (int j = 0; j < angular; ++j, ++k) {
      const double theta = (j + 0.5) * dtheta;
      out.points.col(k) = center + r.nodes(i) * Vec2(std::cos(theta), std::sin(theta));
      out.weights(k) = r.weights(i) * r.nodes(i) * dtheta;
    }
  }
  return out;
}

}  // namespace fracdeg
