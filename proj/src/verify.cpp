#include "fracdeg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "fracdeg/auxfn.hpp"
#include "fracdeg/degree.hpp"

namespace fracdeg {

namespace {

constexpr double kLambda40 = 40.0;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

MapParams with_k(int k) {
  MapParams p;
  p.k = k;
  return p;
}

// Rotation maps in the suite use delta_0 = 0.2.
MapParams rotation_params() {
  MapParams p;
  p.delta = 0.2;
  return p;
}

MapField power(int k) { return gallery("power", with_k(k)); }
MapField conjugated(int k) { return gallery("conjugated-power", with_k(k)); }

TestFunction apriori_bump() { return TestFunction(Vec2(0.2, 0.1), 0.3); }
TestFunction distortion_bump() { return TestFunction(Vec2(0.3, 0.2), 0.25); }

double verdict_code(SignVerdict v) { return static_cast<double>(static_cast<int>(v)); }

// Classifications are shared between checks of one run.
class VerdictCache {
 public:
  explicit VerdictCache(const SuiteConfig& config) : config_(config) {}

  const SignClassification& get(const MapField& f) {
    auto it = cache_.find(f.label);
    if (it == cache_.end()) it = cache_.emplace(f.label, classify_on(f, unit_disk(), config_)).first;
    return it->second;
  }

 private:
  const SuiteConfig& config_;
  std::map<std::string, SignClassification> cache_;
};

struct Task {
  std::string id;
  std::string anchor;
  std::function<VerificationReport()> run;
};

VerificationReport winding_oracle(const MapField& f, int expected, int samples) {
  const auto start = std::chrono::steady_clock::now();
  const CircleTrace trace = trace_circle(f, Vec2::Zero(), 1.0, samples);
  const DegreeResult d = winding_degree(trace, Vec2::Zero());
  VerificationReport rep;
  rep.quantities["degree"] = d.degree;
  rep.quantities["expected"] = expected;
  rep.quantities["angle_residual"] = d.angle_residual;
  rep.quantities["max_increment"] = d.max_increment;
  rep.quantities["min_distance"] = d.min_distance;
  rep.pass = d.trusted && d.degree == expected;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

// Diameter of f over the annulus r <= |x| <= 1, sampled on geometric circles.
double annulus_oscillation(const MapField& f, double r, int samples) {
  const int circles = 32;
  Points2 all(2, static_cast<Eigen::Index>(circles + 1) * samples);
  for (int j = 0; j <= circles; ++j) {
    const double rho = r * std::pow(1.0 / r, static_cast<double>(j) / circles);
    all.middleCols(static_cast<Eigen::Index>(j) * samples, samples) =
        trace_circle(f, Vec2::Zero(), rho, samples).samples;
  }
  return image_diameter(all);
}

VerificationReport loglog_nullity(const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const MapField f = gallery("loglog");
  const Domain disk = unit_disk();
  const auto family = suite_family(f, disk);
  VerificationReport rep;
  double worst = 0.0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const PairingResult pr = jac_pairing(f, family[k], disk, config.eps_seq);
    worst = std::max(worst, std::abs(pr.value) / pr.phi_integral);
  }
  rep.quantities["bumps"] = static_cast<double>(family.size());
  rep.quantities["max_relative_pairing"] = worst;
  const std::vector<double> radii{0.5, 0.1, 0.02};
  bool increasing = true;
  double prev = -1.0;
  for (const double r : radii) {
    const double osc = annulus_oscillation(f, r, 64);
    rep.quantities["osc_r" + fmt(r)] = osc;
    increasing = increasing && osc > prev;
    prev = osc;
  }
  rep.quantities["osc_increasing"] = increasing ? 1.0 : 0.0;
  rep.pass = worst < 1e-3 && increasing;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport d_profile_properties() {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  int violations = 0;
  double seam_err = 0.0;
  const int grid = 10000;
  for (const double c : {0.5, 2.0, 7.0}) {
    for (int i = 0; i <= grid; ++i) {
      const double t = 10.0 * c * i / grid;
      const auto [d, dd] = d_eval(c, t);
      if (!(d > 0.0)) ++violations;
      if (d + t * dd < -1e-12) ++violations;
      if (t > c / 2 && std::abs(d - 1.0 / t) > 1e-12 * (1.0 / t)) ++violations;
      if (t <= c / 4 && (std::abs(d - 2.5 / c) > 1e-12 || dd != 0.0)) ++violations;
      if (t <= c / 4 && !(d + t * dd > 0.0)) ++violations;
    }
    for (const double seam : {c / 4, c / 2}) {
      const auto left = d_eval(c, seam);
      const auto right = d_eval(c, std::nextafter(seam, 2.0 * seam));
      seam_err = std::max({seam_err, std::abs(left.value - right.value),
                           std::abs(left.derivative - right.derivative)});
    }
  }
  rep.quantities["grid_points"] = 3.0 * (grid + 1);
  rep.quantities["violations"] = violations;
  rep.quantities["seam_error"] = seam_err;
  rep.pass = violations == 0 && seam_err <= 1e-12;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport pi_profile_properties() {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  int violations = 0;
  double seam_err = 0.0;
  double sup_pi = 0.0;
  const int grid = 10000;
  for (const int n : {2, 3}) {
    for (const double lambda : {0.1, 1.0, 10.0}) {
      for (int i = 0; i <= grid; ++i) {
        const double t = 10.0 * lambda * i / grid;
        const auto [p, dp] = pi_eval(lambda, n, t);
        const double jac = std::pow(p, n - 1) * (p + t * dp);
        sup_pi = std::max(sup_pi, p);
        if (!(p > 0.0)) ++violations;
        if (jac > 1.0 + 1e-12) ++violations;
        if (t >= 2.0 * lambda && !(jac < 1.0 - 1e-9)) ++violations;
        if (t <= lambda && (p != 1.0 || dp != 0.0)) ++violations;
      }
    }
    for (const double seam : {1.0, 2.0}) {
      const auto left = pi_r(n, seam);
      const auto right = pi_r(n, std::nextafter(seam, 3.0));
      seam_err = std::max({seam_err, std::abs(left.value - right.value),
                           std::abs(left.derivative - right.derivative)});
    }
  }
  rep.quantities["grid_points"] = 6.0 * (grid + 1);
  rep.quantities["violations"] = violations;
  rep.quantities["seam_error"] = seam_err;
  rep.quantities["sup_pi"] = sup_pi;
  rep.pass = violations == 0 && seam_err <= 1e-12 && sup_pi <= 1.0 + 1e-12;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport sign_report(const SignClassification& c, SignVerdict expected) {
  VerificationReport rep;
  rep.quantities["verdict"] = verdict_code(c.verdict);
  rep.quantities["expected"] = verdict_code(expected);
  rep.quantities["min_pairing"] = c.min_pairing;
  rep.quantities["bumps"] = static_cast<double>(c.pairings.size());
  if (c.witness) {
    rep.quantities["witness_x"] = c.witness->center()(0);
    rep.quantities["witness_y"] = c.witness->center()(1);
  }
  rep.pass = c.verdict == expected;
  return rep;
}

VerificationReport fd_hygiene() {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  const std::vector<MapField> maps{gallery("identity"), power(2), power(3), conjugated(3),
                                   gallery("gradient-quartic")};
  const std::vector<Vec2> points{Vec2(0.3, 0.2), Vec2(-0.5, 0.4), Vec2(0.1, -0.7)};
  double worst_order = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const auto& f : maps) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double exact = f.differential(points[i]).determinant();
      double prev = -1.0;
      for (const double h : {1e-2, 5e-3, 2.5e-3}) {
        const double err =
            std::abs(finite_difference_differential(f, points[i], h).determinant() - exact);
        if (prev >= 0.0 && prev > 1e-10) {
          const double order = std::log2(prev / err);
          worst_order = std::min(worst_order, order);
          ok = ok && order >= 1.8;
        } else if (prev >= 0.0) {
          ok = ok && err <= 1e-10;
        }
        prev = err;
      }
    }
  }
  rep.quantities["worst_order"] = std::isfinite(worst_order) ? worst_order : 2.0;
  rep.pass = ok;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport trend_hygiene(const SuiteConfig& config, double s) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  const FractionalParams params = FractionalParams::critical(s);
  bool ok = true;
  for (const auto& f : {gallery("identity"), power(2), gallery("gradient-quartic")}) {
    const auto est = gagliardo_seminorm(f, unit_disk(), params, config.seminorm_quadrature());
    const auto& tr = est.refinement_trend;
    for (std::size_t k = 0; k < tr.size(); ++k) rep.quantities[f.label + ".level" + std::to_string(k)] = tr[k];
    for (std::size_t k = 2; k < tr.size(); ++k)
      ok = ok && std::abs(tr[k] - tr[k - 1]) < std::abs(tr[k - 1] - tr[k - 2]);
  }
  rep.pass = ok;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

}  // namespace

void SuiteConfig::validate(int n) const {
  if (s_values.empty()) throw std::invalid_argument("at least one s value is required");
  const double threshold = static_cast<double>(n) / (n + 1);
  for (const double s : s_values)
    if (!(s >= threshold && s < 1.0))
      throw std::invalid_argument("s = " + fmt(s) + " is outside [n/(n+1), 1)");
  if (resolutions.empty()) throw std::invalid_argument("at least one resolution is required");
  for (std::size_t k = 0; k < resolutions.size(); ++k) {
    if (resolutions[k] < 16) throw std::invalid_argument("resolutions must be at least 16");
    if (k > 0 && resolutions[k] <= resolutions[k - 1])
      throw std::invalid_argument("resolutions must be ascending");
  }
  if (eps_seq.size() < 3) throw std::invalid_argument("epsilon sequence needs at least 3 entries");
  for (std::size_t k = 0; k < eps_seq.size(); ++k) {
    if (!(eps_seq[k] > 0.0)) throw std::invalid_argument("epsilon values must be positive");
    if (k > 0 && !(eps_seq[k] < eps_seq[k - 1]))
      throw std::invalid_argument("epsilon sequence must be strictly decreasing");
  }
  if (eps_seq.front() >= 0.1)
    throw std::invalid_argument("epsilon values must stay below 0.1 for the suite family");
  if (trace_samples < 32) throw std::invalid_argument("trace samples must be at least 32");
  if (interior_resolution < 4) throw std::invalid_argument("interior resolution must be at least 4");
  if (!(distortion_tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  for (const auto& name : gallery) (void)fracdeg::gallery(name);
}

QuadratureSpec SuiteConfig::seminorm_quadrature() const {
  QuadratureSpec q;
  q.sample_count = resolutions.back();
  q.seed = seed;
  return q;
}

bool SuiteConfig::selected(const std::string& check_id) const {
  if (checks.empty()) return true;
  return std::any_of(checks.begin(), checks.end(),
                     [&](const std::string& c) { return check_id.rfind(c, 0) == 0; });
}

std::vector<std::string> SuiteConfig::smooth_gallery() const {
  if (!gallery.empty()) return gallery;
  return {"identity", "power-2", "power-3", "conjugation", "gradient-quartic"};
}

Domain unit_disk() { return Domain::disk(Vec2::Zero(), 1.0); }

std::vector<TestFunction> suite_family(const MapField& f, const Domain& ball) {
  std::optional<Vec2> avoid;
  if (!f.singular_points.empty()) avoid = f.singular_points.front();
  return bump_family(ball, 5, 0.15, avoid, 0.1);
}

SignClassification classify_on(const MapField& f, const Domain& ball, const SuiteConfig& config) {
  const auto family = suite_family(f, ball);
  return sign_classify(f, ball, family, config.eps_seq);
}

VerificationReport continuity_certificate(const MapField& f, const Domain& ball,
                                          const FractionalParams& params,
                                          const SuiteConfig& config,
                                          std::optional<SignVerdict> verdict) {
  const auto start = std::chrono::steady_clock::now();
  if (!verdict) verdict = classify_on(f, ball, config).verdict;
  VerificationReport rep;
  rep.check_id = "verify.continuity." + f.label;
  rep.paper_anchor = "continuity-certificate";
  rep.quantities["verdict"] = verdict_code(*verdict);
  rep.hypothesis_met = *verdict == SignVerdict::positive_evidence;
  if (!rep.hypothesis_met) {
    rep.pass = false;
    rep.runtime_ms = elapsed_ms(start);
    return rep;
  }
  const Vec2 c = ball.center2();
  const double R = ball.r_outer();

  std::vector<double> radii;
  for (int k = 5; k >= 0; --k) radii.push_back(R * std::pow(0.5, k));
  const auto profile = oscillation_profile(f, c, radii, config.trace_samples);
  for (std::size_t k = 0; k < profile.size(); ++k)
    rep.quantities["osc." + std::to_string(k)] = profile[k].second;
  const bool monotone = lambda_monotone(profile, kLambda40);
  rep.quantities["osc_monotone"] = monotone ? 1.0 : 0.0;

  const VerificationReport mod =
      modulus_bound_check(f, ball, params, 5, config.seminorm_quadrature(), config.constants,
                          config.trace_samples);
  rep.quantities["modulus_ratio"] = mod.quantities.at("ratio");
  rep.quantities["modulus_pass"] = mod.pass ? 1.0 : 0.0;
  const double fp = mod.quantities.at("pair_0.rhs");
  rep.quantities["seminorm"] = std::pow(fp, 1.0 / params.p);

  // |f(x) - f(y)| <= (C [f]^p / log(R / |x - y|))^{1/p}
  const double C = std::isfinite(config.constants.modulus) ? config.constants.modulus : 1.0;
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k) {
    const double delta = R * std::pow(0.5, k + 2);
    const double omega = std::pow(C * fp / std::log(R / delta), 1.0 / params.p);
    rep.quantities["modulus." + std::to_string(k) + ".distance"] = delta;
    rep.quantities["modulus." + std::to_string(k) + ".omega"] = omega;
    decreasing = decreasing && omega < prev;
    prev = omega;
  }
  rep.quantities["modulus_decreasing"] = decreasing ? 1.0 : 0.0;
  rep.pass = monotone && mod.pass && decreasing;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport theorem2_pathway_check(const MapField& f, const std::vector<double>& deltas,
                                          const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (deltas.empty()) throw std::invalid_argument("at least one delta is required");
  const Domain disk = unit_disk();
  const FractionalParams params = FractionalParams::critical(config.s_values.front());
  VerificationReport rep;
  rep.check_id = "verify.curl-free." + f.label;
  rep.paper_anchor = "curl-free-continuity";

  const auto family = suite_family(f, disk);
  double max_curl = 0.0;
  for (const auto& phi : family)
    max_curl = std::max(max_curl, std::abs(curl_pairing(f, phi, disk)) / bump_integral(phi));
  const SignClassification base = sign_classify(f, disk, family, config.eps_seq);
  rep.quantities["max_relative_curl"] = max_curl;
  rep.quantities["verdict"] = verdict_code(base.verdict);
  rep.hypothesis_met = max_curl <= 1e-8 && supports_nonnegative(base.verdict);
  if (!rep.hypothesis_met) {
    rep.pass = false;
    rep.runtime_ms = elapsed_ms(start);
    return rep;
  }

  const QuadratureSpec quad = config.seminorm_quadrature();
  const double f_norm = gagliardo_seminorm(f, disk, params, quad).value;
  const double id_norm = gagliardo_seminorm(gallery("identity"), disk, params, quad).value;
  rep.quantities["seminorm"] = f_norm;
  rep.quantities["identity_seminorm"] = id_norm;
  bool ok = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const double delta = deltas[k];
    const MapField fd = distort(f, delta);
    const SignVerdict v = classify_on(fd, disk, config).verdict;
    const VerificationReport cert = continuity_certificate(fd, disk, params, config, v);
    const std::string key = "delta_" + std::to_string(k);
    const double norm = cert.hypothesis_met ? cert.quantities.at("seminorm") : 0.0;
    const double bound = f_norm + std::abs(delta) * id_norm;
    rep.quantities[key + ".delta"] = delta;
    rep.quantities[key + ".verdict"] = verdict_code(v);
    rep.quantities[key + ".certificate"] = cert.pass ? 1.0 : 0.0;
    rep.quantities[key + ".seminorm"] = norm;
    rep.quantities[key + ".bound"] = bound;
    if (cert.hypothesis_met) {
      rep.quantities[key + ".omega_min"] = cert.quantities.at("modulus.4.omega");
      lo = std::min(lo, cert.quantities.at("modulus.4.omega"));
      hi = std::max(hi, cert.quantities.at("modulus.4.omega"));
    }
    ok = ok && v == SignVerdict::positive_evidence && cert.pass &&
         norm <= bound * (1.0 + config.constants.slack);
  }
  rep.quantities["omega_spread"] = hi > 0.0 ? hi / lo - 1.0 : 0.0;
  rep.pass = ok;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
  config.validate();
  VerdictCache verdicts(config);
  const Domain disk = unit_disk();
  const int M = config.trace_samples;
  std::vector<Task> tasks;

  for (int k = 1; k <= 3; ++k) {
    tasks.push_back({"degree.winding.power-" + std::to_string(k), "winding-number",
                     [=] { return winding_oracle(power(k), k, M); }});
    const std::string label = k == 1 ? "conjugation" : "conjugated-power-" + std::to_string(k);
    tasks.push_back({"degree.winding." + label, "winding-number",
                     [=] { return winding_oracle(conjugated(k), -k, M); }});
  }
  tasks.push_back({"degree.winding.constant", "winding-number",
                   [=] { return winding_oracle(gallery("constant"), 0, M); }});

  tasks.push_back({"jacobian.loglog-nullity", "loglog-counterexample",
                   [&] { return loglog_nullity(config); }});
  tasks.push_back({"auxfn.d-profile", "auxiliary-d-profile", [] { return d_profile_properties(); }});
  tasks.push_back({"auxfn.pi-profile", "auxiliary-pi-profile", [] { return pi_profile_properties(); }});

  const std::vector<std::pair<std::string, SignVerdict>> expected_signs{
      {"identity", SignVerdict::positive_evidence},
      {"power-2", SignVerdict::positive_evidence},
      {"power-3", SignVerdict::positive_evidence},
      {"gradient-quartic", SignVerdict::positive_evidence},
      {"conjugation", SignVerdict::sign_changing},
      {"constant", SignVerdict::null},
      {"loglog", SignVerdict::null}};
  for (const auto& [name, expected] : expected_signs) {
    const MapField f = gallery(name);
    tasks.push_back({"jacobian.sign." + f.label, "sign-classification",
                     [&verdicts, f, expected = expected] { return sign_report(verdicts.get(f), expected); }});
  }

  for (const std::string name : {"identity", "power-2", "rotation"}) {
    const MapField f = gallery(name, rotation_params());
    for (const double delta : {0.5, 0.2, -0.3}) {
      tasks.push_back({"jacobian.distortion." + f.label + ".delta" + fmt(delta),
                       "rotation-distortion", [&config, f, delta] {
                         return distortion_identity_check(f, delta, distortion_bump(), unit_disk(),
                                                          config.eps_seq, {},
                                                          config.distortion_tolerance);
                       }});
    }
  }

  for (const std::string name : {"power-2", "gradient-quartic", "conjugation"}) {
    const MapField f = gallery(name);
    tasks.push_back({"degree.monotonicity." + f.label, "degree-monotonicity", [&verdicts, f, M] {
                       const Points2 probes =
                           probe_grid(trace_circle(f, Vec2::Zero(), 1.0, M));
                       return degree_monotonicity_check(f, Vec2::Zero(), 0.5, 1.0, probes, M,
                                                        verdicts.get(f).verdict);
                     }});
    tasks.push_back({"degree.nonnegativity." + f.label, "degree-nonnegativity", [&verdicts, f, M] {
                       const Points2 probes =
                           probe_grid(trace_circle(f, Vec2::Zero(), 1.0, M));
                       return degree_nonnegativity_check(f, Vec2::Zero(), 1.0, probes, M,
                                                         verdicts.get(f).verdict);
                     }});
  }

  for (const std::string name : {"power-1", "power-2", "power-3", "conjugation"}) {
    const MapField f = gallery(name);
    tasks.push_back({"degree.sense-preserving." + f.label, "sense-preserving", [&verdicts, f, M] {
                       const Points2 probes =
                           probe_grid(trace_circle(f, Vec2::Zero(), 1.0, M));
                       return sense_preserving_check(f, unit_disk(), probes, M,
                                                     verdicts.get(f).verdict);
                     }});
  }

  for (const std::string name :
       {"identity", "power-2", "power-3", "gradient-quartic", "conjugation"}) {
    const MapField f = gallery(name);
    tasks.push_back({"degree.essential-diameter." + f.label, "essential-diameter",
                     [&verdicts, &config, f, M] {
                       return essential_diameter_check(
                           f, unit_disk(), GridSpec{config.interior_resolution, std::nullopt}, M,
                           verdicts.get(f).verdict);
                     }});
  }

  const bool many_s = config.s_values.size() > 1;
  for (const double s : config.s_values) {
    const std::string sfx = many_s ? ".s" + fmt(s) : "";
    const FractionalParams params = FractionalParams::critical(s);
    for (const auto& name : config.smooth_gallery()) {
      const MapField f = gallery(name);
      tasks.push_back({"sobolev.restriction." + f.label + sfx, "restriction-inequality",
                       [&config, f, params, M] {
                         return restriction_inequality_check(f, unit_disk(), params, 8,
                                                             config.seminorm_quadrature(),
                                                             config.constants, M);
                       }});
      tasks.push_back({"sobolev.extension-energy." + f.label + sfx, "extension-energy",
                       [&config, f, params] {
                         return extension_energy_check(f, unit_disk(), params, {},
                                                       config.seminorm_quadrature(),
                                                       config.constants);
                       }});
      tasks.push_back({"sobolev.modulus." + f.label + sfx, "oscillation-modulus",
                       [&config, f, params, M] {
                         return modulus_bound_check(f, unit_disk(), params, 5,
                                                    config.seminorm_quadrature(),
                                                    config.constants, M);
                       }});
      tasks.push_back({"jacobian.apriori-bound." + f.label + sfx, "jacobian-apriori-bound",
                       [&config, f, s] {
                         return apriori_bound_check(f, apriori_bump(), unit_disk(), s,
                                                    config.eps_seq, config.seminorm_quadrature(),
                                                    config.constants);
                       }});
    }
    tasks.push_back({"hygiene.seminorm-trend" + sfx, "numerical-hygiene",
                     [&config, s] { return trend_hygiene(config, s); }});
  }

  const FractionalParams front = FractionalParams::critical(config.s_values.front());
  for (const std::string name : {"identity", "power-2", "loglog"}) {
    const MapField f = gallery(name);
    tasks.push_back({"verify.continuity." + f.label, "continuity-certificate",
                     [&verdicts, &config, f, front] {
                       return continuity_certificate(f, unit_disk(), front, config,
                                                     verdicts.get(f).verdict);
                     }});
  }
  for (const std::string name : {"gradient-quartic", "identity", "rotation"}) {
    const MapField f = gallery(name, rotation_params());
    tasks.push_back({"verify.curl-free." + f.label, "curl-free-continuity",
                     [&config, f] { return theorem2_pathway_check(f, {0.3, 0.1, 0.03}, config); }});
  }
  tasks.push_back({"hygiene.fd-determinant", "numerical-hygiene", [] { return fd_hygiene(); }});

  std::vector<VerificationReport> reports;
  for (const auto& task : tasks) {
    if (!config.selected(task.id)) continue;
    VerificationReport rep;
    try {
      rep = task.run();
    } catch (const std::exception&) {
      rep = VerificationReport{};
      rep.quantities["exception"] = 1.0;
      rep.pass = false;
    }
    rep.check_id = task.id;
    rep.paper_anchor = task.anchor;
    if (!config.timing) rep.runtime_ms.reset();
    reports.push_back(std::move(rep));
  }
  std::sort(reports.begin(), reports.end(),
            [](const auto& a, const auto& b) { return a.check_id < b.check_id; });
  return reports;
}

FittedConstants calibrate(const SuiteConfig& config, int resolution) {
  config.validate();
  SuiteConfig fine = config;
  fine.resolutions = {resolution};
  fine.constants = FittedConstants{};
  const QuadratureSpec quad = fine.seminorm_quadrature();
  const double s = config.s_values.front();
  const FractionalParams params = FractionalParams::critical(s);
  const Domain disk = unit_disk();

  FittedConstants out;
  out.version = 1;
  out.restriction = 0.0;
  out.apriori = 0.0;
  out.modulus = 0.0;
  out.energy_lo = std::numeric_limits<double>::infinity();
  out.energy_hi = 0.0;
  out.slack = config.constants.slack;
  for (const auto& name : fine.smooth_gallery()) {
    const MapField f = gallery(name);
    out.restriction = std::max(
        out.restriction,
        restriction_inequality_check(f, disk, params, 8, quad, fine.constants, fine.trace_samples)
            .quantities.at("ratio"));
    out.modulus = std::max(
        out.modulus,
        modulus_bound_check(f, disk, params, 5, quad, fine.constants, fine.trace_samples)
            .quantities.at("ratio"));
    out.apriori = std::max(out.apriori, apriori_bound_check(f, apriori_bump(), disk, s,
                                                             fine.eps_seq, quad, fine.constants)
                                            .quantities.at("ratio"));
    const auto energy = extension_energy_check(f, disk, params, {}, quad, fine.constants);
    if (energy.quantities.at("degenerate") == 0.0) {
      out.energy_lo = std::min(out.energy_lo, energy.quantities.at("ratio"));
      out.energy_hi = std::max(out.energy_hi, energy.quantities.at("ratio"));
    }
  }
  std::string names;
  for (const auto& name : fine.smooth_gallery()) names += (names.empty() ? "" : ", ") + name;
  out.note = "fitted at " + std::to_string(resolution) + " points per axis, s = " + fmt(s) +
             ", on " + names;
  return out;
}

nlohmann::json suite_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

}  // namespace fracdeg
