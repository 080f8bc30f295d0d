#include "fracdeg/sobolev.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "fracdeg/parallel.hpp"

namespace fracdeg {

namespace {

constexpr double kPi = std::numbers::pi;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Drops samples at declared singular points and evaluates the map.
std::pair<SampleSet, MatX> evaluate_planar(const MapField& f, const SampleSet& s) {
  std::vector<Eigen::Index> keep;
  keep.reserve(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (!f.is_singular(s.points.col(k))) keep.push_back(k);
  SampleSet out;
  out.spacing = s.spacing;
  const auto m = static_cast<Eigen::Index>(keep.size());
  out.points.resize(2, m);
  out.weights.resize(m);
  MatX values(2, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    out.points.col(k) = s.points.col(keep[k]);
    out.weights(k) = s.weights(keep[k]);
    values.col(k) = f.evaluate(out.points.col(k));
  }
  return {std::move(out), std::move(values)};
}

SampleSet head(const SampleSet& s, Eigen::Index m) {
  SampleSet out;
  out.points = s.points.leftCols(m);
  out.weights = s.weights.head(m) * (static_cast<double>(s.size()) / m);
  out.spacing = s.spacing * std::pow(static_cast<double>(s.size()) / m, 1.0 / s.points.rows());
  return out;
}

using Evaluator = std::function<std::pair<SampleSet, MatX>(const SampleSet&)>;

SeminormEstimate seminorm_impl(const Evaluator& eval, const Domain& domain,
                               const FractionalParams& params, const QuadratureSpec& quad) {
  params.validate();
  quad.validate(domain);
  if (params.n != domain.dim()) throw std::invalid_argument("params.n must match the domain");

  SeminormEstimate est;
  est.scheme = quad;
  const int levels = 3;
  std::optional<SampleSet> mc;
  if (quad.scheme == QuadratureScheme::monte_carlo)
    mc = sample_domain_monte_carlo(domain, quad.sample_count, quad.seed);

  for (int level = levels - 1; level >= 0; --level) {
    const int divisor = 1 << level;
    SampleSet raw;
    if (mc) {
      raw = head(*mc, std::max<Eigen::Index>(2, mc->size() / divisor));
    } else {
      GridSpec grid;
      grid.points_per_axis = std::max(4, quad.sample_count / divisor);
      raw = sample_domain(domain, grid);
    }
    auto [samples, values] = eval(raw);
    double delta = 2.0 * samples.spacing;
    if (quad.diagonal_exclusion_radius) delta = *quad.diagonal_exclusion_radius * divisor;
    const ExclusionSums sums = gagliardo_pair_sums(samples, values, params, delta);
    if (sums.pairs == 0)
      throw std::runtime_error("no sample pairs left after diagonal exclusion");
    est.refinement_trend.push_back(std::pow(extrapolate_exclusion(sums, params), 1.0 / params.p));
  }
  est.value = est.refinement_trend.back();
  return est;
}

}  // namespace

void FractionalParams::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0, 1)");
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (n < 1) throw std::invalid_argument("dimension must be positive");
}

void FractionalParams::require_trace() const {
  validate();
  if (!(s - 1.0 / p > 0.0)) throw std::invalid_argument("restriction needs s - 1/p > 0");
}

ExclusionSums gagliardo_pair_sums(const SampleSet& samples, const MatX& values,
                                  const FractionalParams& params, double delta) {
  const Eigen::Index m = samples.size();
  if (values.cols() != m) throw std::invalid_argument("values and samples differ in size");
  const double half_p = 0.5 * params.p;
  const double half_b = 0.5 * (params.n + params.s * params.p);
  const double d1 = delta * delta;
  const double d2 = 4.0 * delta * delta;
  const MatX& X = samples.points;
  const VecX& w = samples.weights;

  struct Acc {
    double near = 0.0;
    double far = 0.0;
    long long pairs = 0;
    Acc& operator+=(const Acc& o) {
      near += o.near;
      far += o.far;
      pairs += o.pairs;
      return *this;
    }
  };

  const Acc total = deterministic_reduce(
      static_cast<std::size_t>(m), 16, Acc{}, [&](std::size_t begin, std::size_t end) {
        Acc acc;
        Eigen::ArrayXd dist2, diff2, term;
        for (auto i = static_cast<Eigen::Index>(begin); i < static_cast<Eigen::Index>(end); ++i) {
          const Eigen::Index rest = m - i - 1;
          if (rest <= 0) continue;
          dist2 = (X.rightCols(rest).colwise() - X.col(i)).colwise().squaredNorm().transpose();
          diff2 = (values.rightCols(rest).colwise() - values.col(i))
                      .colwise()
                      .squaredNorm()
                      .transpose();
          term = (half_p * diff2.log() - half_b * dist2.log()).exp() *
                 w.tail(rest).array() * w(i);
          term = (dist2 >= d1 && diff2 > 0.0).select(term, 0.0);
          acc.near += term.sum();
          acc.far += (dist2 >= d2).select(term, 0.0).sum();
          acc.pairs += (dist2 >= d1).count();
        }
        return acc;
      });
  return {2.0 * total.near, 2.0 * total.far, 2 * total.pairs};
}

double extrapolate_exclusion(const ExclusionSums& sums, const FractionalParams& params) {
  const double alpha = params.p * (1.0 - params.s);
  return sums.at_delta + (sums.at_delta - sums.at_double) / (std::pow(2.0, alpha) - 1.0);
}

SeminormEstimate gagliardo_seminorm(const MapField& f, const Domain& domain,
                                    const FractionalParams& params, const QuadratureSpec& quad) {
  domain.require_planar("map seminorm");
  return seminorm_impl([&f](const SampleSet& s) { return evaluate_planar(f, s); }, domain, params,
                       quad);
}

SeminormEstimate gagliardo_seminorm(const TestFunction& phi, const Domain& domain,
                                    const FractionalParams& params, const QuadratureSpec& quad) {
  domain.require_planar("test function seminorm");
  return seminorm_impl(
      [&phi](const SampleSet& s) {
        MatX values(1, s.size());
        for (Eigen::Index k = 0; k < s.size(); ++k) values(0, k) = phi(s.points.col(k));
        return std::make_pair(s, values);
      },
      domain, params, quad);
}

SeminormEstimate gagliardo_seminorm(const std::function<MatX(const MatX&)>& f,
                                    const Domain& domain, const FractionalParams& params,
                                    const QuadratureSpec& quad) {
  return seminorm_impl(
      [&f](const SampleSet& s) {
        MatX values = f(s.points);
        if (values.cols() != s.size())
          throw std::invalid_argument("field returned the wrong number of columns");
        return std::make_pair(s, std::move(values));
      },
      domain, params, quad);
}

double circle_seminorm(const CircleTrace& trace, const FractionalParams& params) {
  params.validate();
  const Eigen::Index M = trace.size();
  if (M < 32) throw std::invalid_argument("circle seminorm needs at least 32 samples");
  const double arc = 2.0 * kPi * trace.radius / M;
  const double exponent = 1.0 + params.s * params.p;
  // Kernel weight by cyclic offset; the sum runs over offsets k >= 1 and k >= 2.
  double near = 0.0;
  double far = 0.0;
  Eigen::ArrayXd diff2(M);
  for (Eigen::Index k = 1; k < M; ++k) {
    const double geodesic = arc * static_cast<double>(std::min(k, M - k));
    const double weight = arc * arc / std::pow(geodesic, exponent);
    for (Eigen::Index i = 0; i < M; ++i)
      diff2(i) = (trace.samples.col(i) - trace.samples.col((i + k) % M)).squaredNorm();
    const double s = diff2.pow(0.5 * params.p).sum() * weight;
    near += s;
    if (k >= 2 && k <= M - 2) far += s;
  }
  // Offsets k >= 1 resolve |u| >= h/2, offsets k >= 2 resolve |u| >= 3h/2.
  const double alpha = params.p * (1.0 - params.s);
  const double total = near + (near - far) / (std::pow(3.0, alpha) - 1.0);
  return std::pow(std::max(total, 0.0), 1.0 / params.p);
}

VerificationReport restriction_inequality_check(const MapField& f, const Domain& ball,
                                                const FractionalParams& params, int radii_count,
                                                const QuadratureSpec& quad,
                                                const FittedConstants& constants,
                                                int circle_samples) {
  const auto start = std::chrono::steady_clock::now();
  if (radii_count < 8) throw std::invalid_argument("restriction check needs radii_count >= 8");
  if (ball.kind() != DomainKind::ball) throw std::invalid_argument("restriction check needs a ball");
  params.require_trace();
  const double R = ball.r_outer();
  const Vec2 c = ball.center2();

  // Trapezoid in r; the degenerate circle at r = 0 contributes nothing.
  double integral = 0.0;
  for (int k = 1; k <= radii_count; ++k) {
    const double r = R * k / radii_count;
    const double v = std::pow(circle_seminorm(trace_circle(f, c, r, circle_samples), params),
                              params.p);
    integral += (k == radii_count ? 0.5 : 1.0) * v * (R / radii_count);
  }
  const double lhs = std::pow(integral, 1.0 / params.p);
  const double rhs = gagliardo_seminorm(f, ball, params, quad).value;

  VerificationReport rep;
  rep.check_id = "sobolev.restriction." + f.label;
  rep.paper_anchor = "restriction-inequality";
  rep.quantities["lhs"] = lhs;
  rep.quantities["rhs"] = rhs;
  rep.quantities["constant"] = constants.restriction;
  const double scale = std::max(lhs, rhs);
  const bool degenerate = scale <= 1e-12;
  rep.quantities["degenerate"] = degenerate ? 1.0 : 0.0;
  if (degenerate) {
    rep.quantities["ratio"] = 0.0;
    rep.pass = true;
  } else {
    const double ratio = lhs / rhs;
    rep.quantities["ratio"] = ratio;
    rep.pass = std::isfinite(ratio) && constants.within_upper(ratio, constants.restriction);
  }
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

MapField cutoff_extension(const MapField& f, const Domain& ball) {
  if (ball.kind() != DomainKind::ball) throw std::invalid_argument("cutoff needs a ball");
  const Vec2 c = ball.center2();
  const double R = ball.r_outer();
  auto base = std::make_shared<const MapField>(f);
  // chi(rho) = psi(2R - rho) / (psi(2R - rho) + psi(rho - R)), psi(u) = exp(-1/u).
  auto chi = [c, R](const Vec2& x) {
    const double rho = (x - c).norm();
    if (rho <= R) return 1.0;
    if (rho >= 2.0 * R) return 0.0;
    const double a = std::exp(-R / (2.0 * R - rho));
    const double b = std::exp(-R / (rho - R));
    return a / (a + b);
  };
  MapField g;
  g.label = f.label + "|cutoff";
  g.smoothness = f.smoothness;
  g.singular_points = f.singular_points;
  g.evaluate = [base, chi](const Vec2& x) {
    const double k = chi(x);
    if (k == 0.0) return Vec2::Zero().eval();
    return (k * base->evaluate(x)).eval();
  };
  return g;
}

double halfspace_extension_energy(const MapField& f, const Domain& ball,
                                  const FractionalParams& params,
                                  const ExtensionTruncation& truncation) {
  params.validate();
  if (ball.kind() != DomainKind::ball) throw std::invalid_argument("extension energy needs a ball");
  if (truncation.resolution < 8) throw std::invalid_argument("extension resolution must be >= 8");
  if (truncation.t_levels < 2) throw std::invalid_argument("extension needs >= 2 t levels");
  const Vec2 c = ball.center2();
  const double R = ball.r_outer();
  const double T = truncation.height > 0.0 ? truncation.height : ball.diameter();
  const int n = truncation.resolution;

  // Sources: midpoint grid on the cutoff support B(c, 2R).
  const MapField g = cutoff_extension(f, ball);
  const double hs = 4.0 * R / n;
  const double t_min = hs;
  if (!(T > t_min)) throw std::invalid_argument("extension height must exceed t_min");
  std::vector<Vec2> src;
  std::vector<Vec2> val;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec2 y = c + Vec2(-2.0 * R + (i + 0.5) * hs, -2.0 * R + (j + 0.5) * hs);
      if ((y - c).norm() >= 2.0 * R || g.is_singular(y)) continue;
      const Vec2 v = g.evaluate(y);
      if (v.squaredNorm() == 0.0) continue;
      src.push_back(y);
      val.push_back(v);
    }
  const auto m = static_cast<Eigen::Index>(src.size());
  Eigen::ArrayXd sy1(m), sy2(m), sv1(m), sv2(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    sy1(k) = src[k](0);
    sy2(k) = src[k](1);
    sv1(k) = val[k](0) * hs * hs;
    sv2(k) = val[k](1) * hs * hs;
  }

  // Geometric t levels, trapezoid in log t.
  const int L = truncation.t_levels;
  std::vector<double> ts(L), tw(L);
  const double dlog = std::log(T / t_min) / (L - 1);
  for (int l = 0; l < L; ++l) {
    ts[l] = t_min * std::exp(l * dlog);
    tw[l] = ts[l] * dlog * ((l == 0 || l == L - 1) ? 0.5 : 1.0);
  }

  // Evaluation grid on B(c, 2R + T).
  const double reach = 2.0 * R + T;
  const double hx = 2.0 * reach / n;
  std::vector<Vec2> xs;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec2 x = c + Vec2(-reach + (i + 0.5) * hx, -reach + (j + 0.5) * hx);
      if ((x - c).norm() < reach) xs.push_back(x);
    }

  const double weight_exp = (1.0 - 1.0 / params.p - params.s) * params.p;
  const double norm = 1.0 / (2.0 * kPi);
  return deterministic_reduce(xs.size(), 8, 0.0, [&](std::size_t begin, std::size_t end) {
    double acc = 0.0;
    Eigen::ArrayXd z1, z2, r2, q;
    for (std::size_t a = begin; a < end; ++a) {
      z1 = xs[a](0) - sy1;
      z2 = xs[a](1) - sy2;
      r2 = z1.square() + z2.square();
      for (int l = 0; l < L; ++l) {
        const double t = ts[l];
        const Eigen::ArrayXd d = r2 + t * t;
        q = norm / (d * d * d.sqrt());
        // dP/dx_i = -3 t z_i q, dP/dt = (|z|^2 - 2 t^2) q
        const Eigen::ArrayXd kx = -3.0 * t * z1 * q;
        const Eigen::ArrayXd ky = -3.0 * t * z2 * q;
        const Eigen::ArrayXd kt = (r2 - 2.0 * t * t) * q;
        const double frob2 = std::pow((kx * sv1).sum(), 2) + std::pow((ky * sv1).sum(), 2) +
                             std::pow((kt * sv1).sum(), 2) + std::pow((kx * sv2).sum(), 2) +
                             std::pow((ky * sv2).sum(), 2) + std::pow((kt * sv2).sum(), 2);
        acc += hx * hx * tw[l] * std::pow(t, weight_exp) * std::pow(frob2, 0.5 * params.p);
      }
    }
    return acc;
  });
}

VerificationReport extension_energy_check(const MapField& f, const Domain& ball,
                                          const FractionalParams& params,
                                          const ExtensionTruncation& truncation,
                                          const QuadratureSpec& quad,
                                          const FittedConstants& constants) {
  const auto start = std::chrono::steady_clock::now();
  const double energy = halfspace_extension_energy(f, ball, params, truncation);
  const double seminorm = gagliardo_seminorm(f, ball, params, quad).value;
  VerificationReport rep;
  rep.check_id = "sobolev.extension-energy." + f.label;
  rep.paper_anchor = "extension-energy";
  rep.quantities["energy"] = energy;
  rep.quantities["seminorm"] = seminorm;
  rep.quantities["band_lo"] = constants.energy_lo;
  rep.quantities["band_hi"] = constants.energy_hi;
  const bool degenerate = energy <= 1e-14 && seminorm <= 1e-7;
  rep.quantities["degenerate"] = degenerate ? 1.0 : 0.0;
  if (degenerate) {
    rep.quantities["ratio"] = 0.0;
    rep.pass = true;
  } else {
    const double ratio = std::pow(energy / std::pow(seminorm, params.p), params.n / params.p);
    rep.quantities["ratio"] = ratio;
    rep.pass = std::isfinite(ratio) && constants.within_band(ratio);
  }
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

std::vector<std::pair<double, double>> modulus_radius_pairs(double ball_radius, int pair_count) {
  if (pair_count < 1) throw std::invalid_argument("modulus check needs at least one pair");
  std::vector<std::pair<double, double>> pairs;
  for (int j = 0; j < pair_count; ++j) {
    const double R = ball_radius * (1.0 - 0.1 * (j % 5));
    const double r = R * std::pow(0.5, 1 + j % 3);
    pairs.emplace_back(r, R);
  }
  return pairs;
}

VerificationReport modulus_bound_check(const MapField& f, const Domain& ball,
                                       const FractionalParams& params, int pair_count,
                                       const QuadratureSpec& quad,
                                       const FittedConstants& constants, int circle_samples) {
  const auto start = std::chrono::steady_clock::now();
  if (ball.kind() != DomainKind::ball) throw std::invalid_argument("modulus check needs a ball");
  params.validate();
  const Vec2 c = ball.center2();
  const auto pairs = modulus_radius_pairs(ball.r_outer(), pair_count);

  VerificationReport rep;
  rep.check_id = "sobolev.modulus." + f.label;
  rep.paper_anchor = "oscillation-modulus";
  rep.quantities["constant"] = constants.modulus;
  double worst = 0.0;
  bool ok = true;
  std::vector<std::pair<double, double>> profile;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto [r, R] = pairs[j];
    const double osc = trace_oscillation(f, c, r, circle_samples);
    const double lhs = std::pow(osc, params.p) * std::log(R / r);
    const double rhs =
        std::pow(gagliardo_seminorm(f, Domain::disk(c, R), params, quad).value, params.p);
    const std::string key = "pair_" + std::to_string(j);
    rep.quantities[key + ".r"] = r;
    rep.quantities[key + ".R"] = R;
    rep.quantities[key + ".lhs"] = lhs;
    rep.quantities[key + ".rhs"] = rhs;
    if (lhs <= 1e-14 && rhs <= 1e-14) continue;
    const double ratio = lhs / rhs;
    rep.quantities[key + ".ratio"] = ratio;
    worst = std::max(worst, ratio);
    ok = ok && std::isfinite(ratio) && constants.within_upper(ratio, constants.modulus);
    profile.emplace_back(r, osc);
    profile.emplace_back(R, trace_oscillation(f, c, R, circle_samples));
  }
  // Which oscillation-monotonicity variant holds on the sampled radii: 1 for
  // the plain form, 40 for the Lambda-form, 0 for neither.
  std::sort(profile.begin(), profile.end());
  auto monotone = [&](double lambda) {
    for (std::size_t a = 0; a < profile.size(); ++a)
      for (std::size_t b = a + 1; b < profile.size(); ++b)
        if (profile[a].second > lambda * profile[b].second + 1e-12) return false;
    return true;
  };
  rep.quantities["osc_monotone_variant"] = monotone(1.0) ? 1.0 : (monotone(40.0) ? 40.0 : 0.0);
  rep.quantities["ratio"] = worst;
  rep.pass = ok;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

}  // namespace fracdeg
