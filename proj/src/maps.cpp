#include "fracdeg/maps.hpp"

#include <cmath>
#include <algorithm>
#include <complex>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace fracdeg {

namespace {

using Complex = std::complex<double>;

constexpr double kLogLogClamp = 1e-8;

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Real 2x2 matrix of multiplication by the complex number w.
Mat2 complex_matrix(const Complex& w) {
  Mat2 m;
  m << w.real(), -w.imag(), w.imag(), w.real();
  return m;
}

MapField identity_map() {
  MapField f;
  f.label = "identity";
  f.evaluate = [](const Vec2& x) { return x; };
  f.differential = [](const Vec2&) { return Mat2::Identity().eval(); };
  return f;
}

MapField constant_map(const Vec2& c) {
  MapField f;
  f.label = "constant";
  f.evaluate = [c](const Vec2&) { return c; };
  f.differential = [](const Vec2&) { return Mat2::Zero().eval(); };
  return f;
}

// z -> z^k on C (k > 0) or C \ {0} (k < 0).
MapField power_map(int k) {
  if (k == 0) throw std::invalid_argument("power map needs k != 0");
  MapField f;
  f.label = "power-" + std::to_string(k);
  f.evaluate = [k](const Vec2& x) {
    const Complex w = std::pow(Complex(x(0), x(1)), k);
    return Vec2(w.real(), w.imag());
  };
  f.differential = [k](const Vec2& x) {
    const Complex z(x(0), x(1));
    return complex_matrix(static_cast<double>(k) * std::pow(z, k - 1));
  };
  if (k < 0) {
    f.smoothness = Smoothness::singular_at_points;
    f.singular_points.push_back(Vec2::Zero());
  }
  return f;
}

// z -> conj(z)^k, k >= 1; degree -k on circles around the origin.
MapField conjugated_power_map(int k) {
  if (k < 1) throw std::invalid_argument("conjugated power needs k >= 1");
  MapField f;
  f.label = k == 1 ? "conjugation" : "conjugated-power-" + std::to_string(k);
  f.evaluate = [k](const Vec2& x) {
    const Complex w = std::pow(Complex(x(0), x(1)), k);
    return Vec2(w.real(), -w.imag());
  };
  f.differential = [k](const Vec2& x) {
    const Complex d = static_cast<double>(k) * std::pow(Complex(x(0), x(1)), k - 1);
    Mat2 m;
    m << d.real(), -d.imag(), -d.imag(), -d.real();
    return m;
  };
  return f;
}

MapField loglog_map() {
  MapField f;
  f.label = "loglog-counterexample";
  f.smoothness = Smoothness::discontinuous;
  f.singular_points.push_back(Vec2::Zero());
  f.evaluate = [](const Vec2& x) {
    const double r = x.norm();
    if (r >= 2.0) throw std::domain_error("loglog map is defined for |x| < 2 only");
    const double rc = std::max(r, kLogLogClamp);
    return Vec2(std::log(std::log(2.0 / rc)), 0.0);
  };
  f.differential = [](const Vec2& x) {
    const double r = x.norm();
    if (r >= 2.0) throw std::domain_error("loglog map is defined for |x| < 2 only");
    Mat2 m = Mat2::Zero();
    if (r > kLogLogClamp) m.row(0) = -x.transpose() / (r * r * std::log(2.0 / r));
    return m;
  };
  return f;
}

MapField gradient_quartic_map() {
  MapField f;
  f.label = "gradient-quartic";
  f.evaluate = [](const Vec2& x) { return Vec2(x(0) * x(0) * x(0), x(1) * x(1) * x(1)); };
  f.differential = [](const Vec2& x) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = 3.0 * x(0) * x(0);
    m(1, 1) = 3.0 * x(1) * x(1);
    return m;
  };
  return f;
}

MapField rotation_map(double delta) {
  MapField f = distort(constant_map(Vec2::Zero()), delta);
  f.label = "rotation-" + format_number(delta);
  return f;
}

// Splits "power-3" into ("power", 3).
bool split_suffix(std::string_view name, std::string_view prefix, int& k) {
  if (name.size() <= prefix.size() + 1 || name.substr(0, prefix.size()) != prefix ||
      name[prefix.size()] != '-')
    return false;
  try {
    std::size_t used = 0;
    const std::string tail(name.substr(prefix.size() + 1));
    k = std::stoi(tail, &used);
    return used == tail.size();
  } catch (...) {
    return false;
  }
}

MapField build(std::string_view name, const MapParams& params) {
  int k = params.k;
  if (name == "identity") return identity_map();
  if (name == "constant") return constant_map(params.constant);
  if (name == "conjugation") return conjugated_power_map(1);
  if (name == "loglog" || name == "loglog-counterexample") return loglog_map();
  if (name == "gradient-quartic") return gradient_quartic_map();
  if (name == "rotation") return rotation_map(params.delta);
  if (name == "power" || split_suffix(name, "power", k)) return power_map(k);
  if (name == "conjugated-power" || split_suffix(name, "conjugated-power", k))
    return conjugated_power_map(k);
  throw std::invalid_argument("unknown gallery map: " + std::string(name));
}

}  // namespace

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::smooth:
      return "smooth";
    case Smoothness::singular_at_points:
      return "singular-at-points";
    case Smoothness::discontinuous:
      return "discontinuous";
  }
  return "unknown";
}

bool MapField::is_singular(const Vec2& x, double tol) const {
  for (const auto& s : singular_points)
    if ((x - s).norm() <= tol) return true;
  return false;
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "identity",         "power",    "conjugated-power", "conjugation",
      "constant",         "loglog",   "gradient-quartic", "rotation"};
  return names;
}

MapField gallery(std::string_view name, const MapParams& params) {
  MapField f = build(name, params);
  if (params.distortion) f = distort(f, *params.distortion);
  return f;
}

MapField distort(const MapField& f, double delta) {
  MapField g = f;
  g.label = f.label + "+rot(" + format_number(delta) + ")";
  auto base = std::make_shared<const MapField>(f);
  g.evaluate = [base, delta](const Vec2& x) {
    return (base->evaluate(x) + delta * Vec2(-x(1), x(0))).eval();
  };
  if (f.has_differential()) {
    g.differential = [base, delta](const Vec2& x) {
      Mat2 m = base->differential(x);
      m(0, 1) -= delta;
      m(1, 0) += delta;
      return m;
    };
  }
  return g;
}

MapField scaled(const MapField& f, double lambda) {
  MapField g = f;
  g.label = format_number(lambda) + "*" + f.label;
  auto base = std::make_shared<const MapField>(f);
  g.evaluate = [base, lambda](const Vec2& x) { return (lambda * base->evaluate(x)).eval(); };
  if (f.has_differential())
    g.differential = [base, lambda](const Vec2& x) {
      return (lambda * base->differential(x)).eval();
    };
  return g;
}

Mat2 finite_difference_differential(const MapField& f, const Vec2& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  Mat2 m;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e(j) = h;
    m.col(j) = (f.evaluate(x + e) - f.evaluate(x - e)) / (2.0 * h);
  }
  return m;
}

double jacobian_det(const MapField& f, const Vec2& x, double h) {
  if (f.is_singular(x)) throw std::domain_error("jacobian_det evaluated at a singular point");
  if (f.has_differential()) return f.differential(x).determinant();
  return finite_difference_differential(f, x, h).determinant();
}

TestFunction::TestFunction(const Vec2& center, double radius, double amplitude)
    : center_(center), radius_(radius), amplitude_(amplitude) {
  if (!(radius > 0.0)) throw std::invalid_argument("test function radius must be positive");
  if (!(amplitude > 0.0)) throw std::invalid_argument("test function amplitude must be positive");
}

double TestFunction::operator()(const Vec2& x) const {
  const double q = (x - center_).squaredNorm() / (radius_ * radius_);
  if (q >= 1.0) return 0.0;
  return amplitude_ * std::exp(-1.0 / (1.0 - q));
}

Vec2 TestFunction::gradient(const Vec2& x) const {
  const Vec2 d = x - center_;
  const double q = d.squaredNorm() / (radius_ * radius_);
  if (q >= 1.0) return Vec2::Zero();
  const double one_minus = 1.0 - q;
  const double value = amplitude_ * std::exp(-1.0 / one_minus);
  return -value * 2.0 * d / (radius_ * radius_ * one_minus * one_minus);
}

std::vector<TestFunction> bump_family(const Domain& domain, int per_axis, double radius_fraction,
                                      std::optional<Vec2> avoid, double margin) {
  domain.require_planar("bump family");
  if (domain.kind() != DomainKind::ball)
    throw std::invalid_argument("bump family requires a ball domain");
  if (per_axis < 1) throw std::invalid_argument("bump family needs per_axis >= 1");
  const double R = domain.r_outer();
  const double rho = radius_fraction * R;
  const double spacing = 0.2 * R;
  const Vec2 c = domain.center2();
  std::vector<TestFunction> family;
  family.reserve(static_cast<std::size_t>(per_axis) * per_axis);
  const double mid = 0.5 * (per_axis - 1);
  for (int j = 0; j < per_axis; ++j) {
    for (int i = 0; i < per_axis; ++i) {
      Vec2 center = c + spacing * Vec2(i - mid, j - mid);
      if (avoid) {
        Vec2 away = center - *avoid;
        const double clearance = rho + margin;
        if (away.norm() < clearance) {
          const Vec2 dir = away.norm() > 0.0 ? Vec2(away.normalized()) : Vec2(1.0, 0.0);
          center = *avoid + clearance * 1.0000001 * dir;
        }
      }
      family.emplace_back(center, rho);
    }
  }
  return family;
}

namespace {

struct Kernel {
  Points2 nodes;
  VecX mass;
  Points2 slope;  // cell-weighted gradient of eta_eps at each node
};

Kernel build_kernel(const MollifierSpec& spec) {
  const int K = spec.kernel_sample_count;
  const double eps = spec.epsilon;
  const double h = 2.0 / K;
  std::vector<Vec2> u;
  std::vector<double> eta;
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i) {
      const Vec2 v(-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h);
      const double q = v.squaredNorm();
      if (q >= 1.0) continue;
      u.push_back(v);
      eta.push_back(std::exp(-1.0 / (1.0 - q)));
    }
  double total = 0.0;
  for (double e : eta) total += e;
  Kernel k;
  const auto m = static_cast<Eigen::Index>(u.size());
  k.nodes.resize(2, m);
  k.mass.resize(m);
  k.slope.resize(2, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double q = u[j].squaredNorm();
    k.nodes.col(j) = eps * u[j];
    k.mass(j) = eta[j] / total;
    k.slope.col(j) = k.mass(j) * (-2.0 * u[j] / ((1.0 - q) * (1.0 - q))) / eps;
  }
  return k;
}

}  // namespace

MapField mollify(const MapField& f, const MollifierSpec& spec, const Domain& region) {
  region.require_planar("mollify");
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("mollifier epsilon must be positive");
  if (spec.kernel_sample_count < 4)
    throw std::invalid_argument("mollifier needs at least 4 kernel samples per axis");
  const double eps = spec.epsilon;
  const bool empty = region.kind() == DomainKind::rectangle
                         ? (region.upper() - region.lower()).minCoeff() <= 2.0 * eps
                         : region.r_outer() - region.r_inner() <= 2.0 * eps ||
                               (region.kind() == DomainKind::ball && region.r_outer() <= eps);
  if (empty) throw std::invalid_argument("mollifier epsilon too large for the requested region");

  auto kernel = std::make_shared<const Kernel>(build_kernel(spec));
  auto base = std::make_shared<const MapField>(f);
  auto dom = std::make_shared<const Domain>(region);
  auto check = [dom, eps](const Vec2& x) {
    if (dom->distance_to_boundary(x) < eps)
      throw std::domain_error("mollified map evaluated outside the shrunk region");
  };

  MapField g;
  g.label = f.label + "*eta(" + format_number(eps) + ")";
  g.smoothness = Smoothness::smooth;
  g.evaluate = [kernel, base, check](const Vec2& x) {
    check(x);
    Vec2 acc = Vec2::Zero();
    for (Eigen::Index j = 0; j < kernel->mass.size(); ++j)
      acc += kernel->mass(j) * base->evaluate(x - kernel->nodes.col(j));
    return acc;
  };
  if (f.has_differential()) {
    g.differential = [kernel, base, check](const Vec2& x) {
      check(x);
      Mat2 acc = Mat2::Zero();
      for (Eigen::Index j = 0; j < kernel->mass.size(); ++j)
        acc += kernel->mass(j) * base->differential(x - kernel->nodes.col(j));
      return acc;
    };
  } else {
    g.differential = [kernel, base, check](const Vec2& x) {
      check(x);
      Mat2 acc = Mat2::Zero();
      for (Eigen::Index j = 0; j < kernel->mass.size(); ++j)
        acc += base->evaluate(x - kernel->nodes.col(j)) * kernel->slope.col(j).transpose();
      return acc;
    };
  }
  return g;
}

CircleTrace trace_circle(const MapField& f, const Vec2& center, double r, int count) {
  if (count < 32) throw std::invalid_argument("circle traces need at least 32 samples");
  const Points2 pts = sample_circle(center, r, count);
  CircleTrace t;
  t.center = center;
  t.radius = r;
  t.map_label = f.label;
  t.samples.resize(2, count);
  for (int k = 0; k < count; ++k) t.samples.col(k) = f.evaluate(pts.col(k));
  return t;
}

}  // namespace fracdeg

namespace fracdeg {

double image_diameter(const Points2& points) {
  const Eigen::Index m = points.cols();
  if (m < 2) return 0.0;
  std::vector<Vec2> pts(m);
  for (Eigen::Index k = 0; k < m; ++k) pts[k] = points.col(k);
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  // Andrew's monotone chain.
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, (hull[i] - hull[j]).squaredNorm());
  return std::sqrt(best);
}

double trace_oscillation(const MapField& f, const Vec2& center, double r, int count) {
  return image_diameter(trace_circle(f, center, r, count).samples);
}

}  // namespace fracdeg
