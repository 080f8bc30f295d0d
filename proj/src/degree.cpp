#include "fracdeg/degree.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fracdeg/parallel.hpp"

namespace fracdeg {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLambda = 20.0;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string probe_key(Eigen::Index k, const char* field) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "probe.%02d.%s", static_cast<int>(k), field);
  return buf;
}

// Largest singular value of a 2x2 matrix.
double operator_norm(const Mat2& a) {
  const double fro2 = a.squaredNorm();
  const double det = a.determinant();
  return std::sqrt(0.5 * (fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det))));
}

Mat2 differential_at(const MapField& f, const Vec2& x, double h) {
  return f.has_differential() ? f.differential(x) : finite_difference_differential(f, x, h);
}

void require_samples(int samples) {
  if (samples < 32) throw std::invalid_argument("degree checks need at least 32 trace samples");
}

// Degree at one probe for one trace, or nullopt when the probe is too close
// to the image or the winding is not resolved.
std::optional<int> admissible_degree(const CircleTrace& trace, const Vec2& p, double margin) {
  const Eigen::Index m = trace.size();
  double dmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < m; ++k) dmin = std::min(dmin, (trace.samples.col(k) - p).norm());
  if (!(dmin > margin)) return std::nullopt;
  const DegreeResult d = winding_degree(trace, p);
  if (!d.trusted) return std::nullopt;
  return d.degree;
}

VerificationReport base_report(const std::string& id, const char* anchor, const MapField& f,
                               bool hypothesis) {
  VerificationReport rep;
  rep.check_id = id + "." + f.label;
  rep.paper_anchor = anchor;
  rep.hypothesis_met = hypothesis;
  return rep;
}

}  // namespace

DegreeResult winding_degree(const CircleTrace& trace, const Vec2& p) {
  const Eigen::Index m = trace.size();
  if (m < 3) throw std::invalid_argument("winding number needs at least 3 samples");
  DegreeResult out;
  out.min_distance = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vec2 a = trace.samples.col(k) - p;
    const Vec2 b = trace.samples.col((k + 1) % m) - p;
    const double na = a.norm();
    if (na == 0.0) throw std::domain_error("trace passes through the probe point");
    out.min_distance = std::min(out.min_distance, na);
    const double inc = std::atan2(a(0) * b(1) - a(1) * b(0), a.dot(b));
    total += inc;
    out.max_increment = std::max(out.max_increment, std::abs(inc));
  }
  out.degree = static_cast<int>(std::lround(total / (2.0 * kPi)));
  out.angle_residual = std::abs(total - 2.0 * kPi * out.degree);
  out.trusted = out.max_increment < 0.5 * kPi && out.angle_residual < 0.25 * kPi;
  return out;
}

Points2 probe_grid(const CircleTrace& boundary, int per_axis) {
  if (per_axis < 2) throw std::invalid_argument("probe grid needs at least 2 points per axis");
  const Vec2 lo = boundary.samples.rowwise().minCoeff();
  const Vec2 hi = boundary.samples.rowwise().maxCoeff();
  Points2 out(2, per_axis * per_axis);
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j) {
      const double u = static_cast<double>(i) / (per_axis - 1);
      const double v = static_cast<double>(j) / (per_axis - 1);
      out.col(i * per_axis + j) = Vec2(lo(0) + u * (hi(0) - lo(0)), lo(1) + v * (hi(1) - lo(1)));
    }
  return out;
}

double probe_margin(const CircleTrace& boundary) {
  return 0.02 * image_diameter(boundary.samples);
}

VerificationReport degree_monotonicity_check(const MapField& f, const Vec2& x0, double r,
                                             double R, const Points2& probes, int samples,
                                             SignVerdict verdict) {
  const auto start = std::chrono::steady_clock::now();
  require_samples(samples);
  if (!(r > 0.0 && r < R)) throw std::invalid_argument("monotonicity needs 0 < r < R");
  const CircleTrace inner = trace_circle(f, x0, r, samples);
  const CircleTrace outer = trace_circle(f, x0, R, samples);
  const double margin = probe_margin(outer);

  const auto n = static_cast<std::size_t>(probes.cols());
  std::vector<std::optional<std::pair<int, int>>> degs(n);
  parallel_for(n, [&](std::size_t k) {
    const Vec2 p = probes.col(static_cast<Eigen::Index>(k));
    const auto di = admissible_degree(inner, p, margin);
    const auto dO = admissible_degree(outer, p, margin);
    if (di && dO) degs[k] = std::make_pair(*di, *dO);
  });

  VerificationReport rep = base_report("degree.monotonicity", "degree-monotonicity", f,
                                       supports_nonnegative(verdict));
  int admissible = 0;
  int violations = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    if (!degs[k]) {
      ++rep.skipped_probes;
      continue;
    }
    ++admissible;
    const auto [dr, dR] = *degs[k];
    if (dr > dR) ++violations;
    rep.quantities[probe_key(i, "x")] = probes(0, i);
    rep.quantities[probe_key(i, "y")] = probes(1, i);
    rep.quantities[probe_key(i, "deg_r")] = dr;
    rep.quantities[probe_key(i, "deg_R")] = dR;
  }
  rep.quantities["r"] = r;
  rep.quantities["R"] = R;
  rep.quantities["margin"] = margin;
  rep.quantities["admissible"] = admissible;
  rep.quantities["violations"] = violations;
  rep.pass = admissible > 0 && violations == 0;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport degree_nonnegativity_check(const MapField& f, const Vec2& x0, double R,
                                              const Points2& probes, int samples,
                                              SignVerdict verdict) {
  const auto start = std::chrono::steady_clock::now();
  require_samples(samples);
  if (!(R > 0.0)) throw std::invalid_argument("radius must be positive");
  const CircleTrace outer = trace_circle(f, x0, R, samples);
  const double margin = probe_margin(outer);

  const auto n = static_cast<std::size_t>(probes.cols());
  std::vector<std::optional<int>> degs(n);
  parallel_for(n, [&](std::size_t k) {
    degs[k] = admissible_degree(outer, probes.col(static_cast<Eigen::Index>(k)), margin);
  });

  VerificationReport rep = base_report("degree.nonnegativity", "degree-nonnegativity", f,
                                       supports_nonnegative(verdict));
  int admissible = 0;
  int violations = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    if (!degs[k]) {
      ++rep.skipped_probes;
      continue;
    }
    ++admissible;
    if (*degs[k] < 0) ++violations;
    rep.quantities[probe_key(i, "x")] = probes(0, i);
    rep.quantities[probe_key(i, "y")] = probes(1, i);
    rep.quantities[probe_key(i, "deg")] = *degs[k];
  }
  rep.quantities["R"] = R;
  rep.quantities["margin"] = margin;
  rep.quantities["admissible"] = admissible;
  rep.quantities["violations"] = violations;
  rep.pass = admissible > 0 && violations == 0;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport sense_preserving_check(const MapField& f, const Domain& ball,
                                          const Points2& probes, int samples,
                                          SignVerdict verdict) {
  const auto start = std::chrono::steady_clock::now();
  require_samples(samples);
  ball.require_planar("sense-preserving check");
  if (ball.kind() != DomainKind::ball) throw std::invalid_argument("sense-preserving check needs a ball");
  const Vec2 x0 = ball.center2();
  const double R = ball.r_outer();
  const CircleTrace boundary = trace_circle(f, x0, R, samples);
  const double margin = probe_margin(boundary);

  // Refine the interior image until every point of f(B) lies within eta of
  // a sample, with eta <= margin / 2.
  SampleSet interior;
  Points2 image;
  double eta = std::numeric_limits<double>::infinity();
  for (int N = 64; N <= 1024; N *= 2) {
    interior = sample_domain(ball, GridSpec{N, std::nullopt});
    const Eigen::Index m = interior.size();
    image.resize(2, m);
    double lip = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Vec2 x = interior.points.col(k);
      image.col(k) = f.evaluate(x);
      lip = std::max(lip, operator_norm(differential_at(f, x, 1e-5)));
    }
    eta = interior.spacing * lip;
    if (eta <= 0.5 * margin) break;
  }

  const auto n = static_cast<std::size_t>(probes.cols());
  std::vector<int> status(n, 0);  // 0 skipped, 1 outside f(B), 2 inside with degree
  std::vector<int> degs(n, 0);
  parallel_for(n, [&](std::size_t k) {
    const Vec2 p = probes.col(static_cast<Eigen::Index>(k));
    const auto d = admissible_degree(boundary, p, margin);
    if (!d) return;
    const double nearest = (image.colwise() - p).colwise().norm().minCoeff();
    status[k] = nearest <= eta ? 2 : 1;
    degs[k] = *d;
  });

  VerificationReport rep =
      base_report("degree.sense-preserving", "sense-preserving", f,
                  verdict == SignVerdict::positive_evidence);
  int interior_probes = 0;
  int violations = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    if (status[k] == 0) {
      ++rep.skipped_probes;
      continue;
    }
    if (status[k] == 1) continue;
    ++interior_probes;
    if (degs[k] < 1) ++violations;
    rep.quantities[probe_key(i, "x")] = probes(0, i);
    rep.quantities[probe_key(i, "y")] = probes(1, i);
    rep.quantities[probe_key(i, "deg")] = degs[k];
  }
  rep.quantities["R"] = R;
  rep.quantities["margin"] = margin;
  rep.quantities["eta"] = eta;
  rep.quantities["interior_probes"] = interior_probes;
  rep.quantities["violations"] = violations;
  rep.pass = interior_probes > 0 && violations == 0 && eta <= 0.5 * margin;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport essential_diameter_check(const MapField& f, const Domain& ball,
                                            const GridSpec& interior, int samples,
                                            SignVerdict verdict) {
  const auto start = std::chrono::steady_clock::now();
  require_samples(samples);
  ball.require_planar("essential diameter check");
  const Vec2 x0 = ball.center2();
  const double R = ball.r_outer();
  const double rho_bd = image_diameter(trace_circle(f, x0, R, samples).samples);

  const SampleSet pts = sample_domain(ball, interior);
  std::vector<Vec2> kept;
  kept.reserve(static_cast<std::size_t>(pts.size()));
  for (Eigen::Index k = 0; k < pts.size(); ++k) {
    const Vec2 x = pts.points.col(k);
    if (!f.is_singular(x)) kept.push_back(f.evaluate(x));
  }
  Points2 image(2, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) image.col(static_cast<Eigen::Index>(k)) = kept[k];
  const double rho_in = image_diameter(image);

  VerificationReport rep = base_report("degree.essential-diameter", "essential-diameter", f,
                                       verdict == SignVerdict::positive_evidence);
  const double ratio = rho_bd > 0.0 ? rho_in / rho_bd : std::numeric_limits<double>::infinity();
  rep.quantities["rho_in"] = rho_in;
  rep.quantities["rho_bd"] = rho_bd;
  rep.quantities["ratio"] = ratio;
  rep.quantities["bound"] = 2.0 * kLambda;
  // The proof's witness constant, recorded next to the looser bound.
  rep.quantities["within_lambda"] = rho_in <= kLambda * rho_bd ? 1.0 : 0.0;
  rep.pass = rho_in <= 2.0 * kLambda * rho_bd;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

std::vector<std::pair<double, double>> oscillation_profile(const MapField& f, const Vec2& x0,
                                                           const std::vector<double>& radii,
                                                           int samples) {
  require_samples(samples);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) throw std::invalid_argument("radii must be positive");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw std::invalid_argument("radii must be increasing");
  }
  std::vector<std::pair<double, double>> out(radii.size());
  parallel_for(radii.size(), [&](std::size_t k) {
    out[k] = {radii[k], trace_oscillation(f, x0, radii[k], samples)};
  });
  return out;
}

bool lambda_monotone(const std::vector<std::pair<double, double>>& profile, double lambda) {
  // Profiles are sorted by radius, so it suffices to compare each entry with
  // the smallest oscillation at any larger radius.
  double smallest_outer = std::numeric_limits<double>::infinity();
  for (auto it = profile.rbegin(); it != profile.rend(); ++it) {
    if (it->second > lambda * smallest_outer) return false;
    smallest_outer = std::min(smallest_outer, it->second);
  }
  return true;
}

void write_trace_csv(std::ostream& out, const CircleTrace& trace) {
  out << "angle,f1,f2\n";
  char buf[96];
  for (Eigen::Index k = 0; k < trace.size(); ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(trace.size());
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", theta, trace.samples(0, k),
                  trace.samples(1, k));
    out << buf;
  }
}

}  // namespace fracdeg
