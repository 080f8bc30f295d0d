#include "fracdeg/jacobian.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracdeg/parallel.hpp"

namespace fracdeg {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void validate_eps(std::span<const double> eps) {
  if (eps.size() < 3) throw std::invalid_argument("epsilon sequence needs at least 3 entries");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0)) throw std::invalid_argument("epsilon values must be positive");
    if (k > 0 && !(eps[k] < eps[k - 1]))
      throw std::invalid_argument("epsilon sequence must be strictly decreasing");
  }
}

struct Sums {
  double value = 0.0;
  double scale = 0.0;
  Sums& operator+=(const Sums& o) {
    value += o.value;
    scale = std::max(scale, o.scale);
    return *this;
  }
};

// sum_k w_k phi(x_k) det(D g(x_k)), with the largest |Dg|_F^2 seen.
Sums integrate_det(const MapField& g, const SampleSet& nodes, const VecX& phi_w) {
  return deterministic_reduce(static_cast<std::size_t>(nodes.size()), 64, Sums{},
                              [&](std::size_t begin, std::size_t end) {
                                Sums acc;
                                for (std::size_t k = begin; k < end; ++k) {
                                  const auto i = static_cast<Eigen::Index>(k);
                                  const Mat2 d = g.differential(nodes.points.col(i));
                                  acc.value += phi_w(i) * d.determinant();
                                  acc.scale = std::max(acc.scale, d.squaredNorm());
                                }
                                return acc;
                              });
}

}  // namespace

std::string to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::nonnegative_evidence:
      return "nonnegative-evidence";
    case SignVerdict::positive_evidence:
      return "positive-evidence";
    case SignVerdict::sign_changing:
      return "sign-changing";
    case SignVerdict::null:
      return "null";
  }
  return "unknown";
}

double bump_integral(const TestFunction& phi, const PairingQuadrature& quad) {
  const SampleSet nodes = polar_rule(phi.center(), phi.radius(), quad.radial, quad.angular);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < nodes.size(); ++k) sum += nodes.weights(k) * phi(nodes.points.col(k));
  return sum;
}

void require_interior_support(const TestFunction& phi, const Domain& domain, double margin) {
  domain.require_planar("pairing");
  const double clearance = domain.distance_to_boundary(phi.center()) - phi.radius();
  if (!(clearance > margin))
    throw std::invalid_argument("test function support is not compactly inside the domain");
}

PairingResult jac_pairing(const MapField& f, const TestFunction& phi, const Domain& domain,
                          std::span<const double> eps_seq, const PairingQuadrature& quad) {
  validate_eps(eps_seq);
  require_interior_support(phi, domain, eps_seq.front());
  const SampleSet nodes = polar_rule(phi.center(), phi.radius(), quad.radial, quad.angular);
  VecX phi_w(nodes.size());
  for (Eigen::Index k = 0; k < nodes.size(); ++k)
    phi_w(k) = nodes.weights(k) * phi(nodes.points.col(k));

  PairingResult out;
  out.phi_integral = phi_w.sum();
  for (const double eps : eps_seq) {
    const MapField g = mollify(f, {eps, quad.kernel_samples}, domain);
    const Sums s = integrate_det(g, nodes, phi_w);
    out.epsilon_trend.emplace_back(eps, s.value);
    out.scale = s.scale;
  }
  if (f.has_differential() && f.smoothness == Smoothness::smooth)
    out.exact = integrate_det(f, nodes, phi_w).value;

  const auto n = out.epsilon_trend.size();
  const auto [eps_prev, v_prev] = out.epsilon_trend[n - 2];
  const auto [eps_last, v_last] = out.epsilon_trend[n - 1];
  out.value = v_last;
  const double ratio2 = (eps_prev / eps_last) * (eps_prev / eps_last);
  out.extrapolated = v_last + (v_last - v_prev) / (ratio2 - 1.0);
  out.converged = std::abs(v_last - v_prev) <= 1e-3 * out.phi_integral * out.scale;
  return out;
}

double curl_pairing(const MapField& f, const TestFunction& phi, const Domain& domain,
                    const PairingQuadrature& quad) {
  require_interior_support(phi, domain, 0.0);
  const SampleSet nodes = polar_rule(phi.center(), phi.radius(), quad.radial, quad.angular);
  return deterministic_reduce(static_cast<std::size_t>(nodes.size()), 64, 0.0,
                              [&](std::size_t begin, std::size_t end) {
                                double acc = 0.0;
                                for (std::size_t k = begin; k < end; ++k) {
                                  const auto i = static_cast<Eigen::Index>(k);
                                  const Vec2 x = nodes.points.col(i);
                                  const Vec2 v = f.evaluate(x);
                                  const Vec2 g = phi.gradient(x);
                                  acc -= nodes.weights(i) * (v(1) * g(0) - v(0) * g(1));
                                }
                                return acc;
                              });
}

SignClassification sign_classify(const MapField& f, const Domain& domain,
                                 std::span<const TestFunction> family,
                                 std::span<const double> eps_seq,
                                 const PairingQuadrature& quad) {
  if (family.empty()) throw std::invalid_argument("test family must be nonempty");
  SignClassification out;
  out.pairings.resize(family.size());
  out.tolerances.resize(family.size());
  std::vector<double> integrals(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const PairingResult r = jac_pairing(f, family[k], domain, eps_seq, quad);
    out.pairings[k] = r.value;
    integrals[k] = r.phi_integral;
    out.tolerances[k] = kSignTolerance * r.phi_integral * r.scale + 1e-14 * r.phi_integral;
  }
  bool all_null = true;
  bool any_negative = false;
  bool all_positive = true;
  double best = std::numeric_limits<double>::infinity();
  std::size_t witness = 0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double p = out.pairings[k];
    const double tol = out.tolerances[k];
    all_null = all_null && std::abs(p) <= tol;
    any_negative = any_negative || p < -tol;
    all_positive = all_positive && p > tol;
    if (p / integrals[k] < best) {
      best = p / integrals[k];
      witness = k;
    }
  }
  out.min_pairing = *std::min_element(out.pairings.begin(), out.pairings.end());
  out.witness = family[witness];
  if (all_null)
    out.verdict = SignVerdict::null;
  else if (any_negative)
    out.verdict = SignVerdict::sign_changing;
  else if (all_positive)
    out.verdict = SignVerdict::positive_evidence;
  else
    out.verdict = SignVerdict::nonnegative_evidence;
  return out;
}

VerificationReport apriori_bound_check(const MapField& f, const TestFunction& phi,
                                       const Domain& domain, double s,
                                       std::span<const double> eps_seq,
                                       const QuadratureSpec& seminorm_quad,
                                       const FittedConstants& constants,
                                       const PairingQuadrature& quad) {
  const auto start = std::chrono::steady_clock::now();
  const int n = domain.dim();
  const double lower = std::max((n - 1.0) / n, n / (n + 1.0));
  if (!(s > lower && s < 1.0))
    throw std::invalid_argument("a priori bound needs s in (max((n-1)/n, n/(n+1)), 1)");
  const PairingResult pr = jac_pairing(f, phi, domain, eps_seq, quad);
  const double pairing = pr.exact ? *pr.exact : pr.extrapolated;
  const double fnorm = gagliardo_seminorm(f, domain, FractionalParams::critical(s, n), seminorm_quad).value;
  // The test side lives in W^{(1-s)n, 1/(1-s)}.
  const FractionalParams test_params{(1.0 - s) * n, 1.0 / (1.0 - s), n};
  const double phinorm = gagliardo_seminorm(phi, domain, test_params, seminorm_quad).value;
  const double bound = std::pow(fnorm, n) * phinorm;

  VerificationReport rep;
  rep.check_id = "jacobian.apriori-bound." + f.label;
  rep.paper_anchor = "jacobian-apriori-bound";
  rep.quantities["pairing"] = pairing;
  rep.quantities["f_seminorm"] = fnorm;
  rep.quantities["phi_seminorm"] = phinorm;
  rep.quantities["constant"] = constants.apriori;
  const bool degenerate = std::abs(pairing) <= 1e-14 * pr.phi_integral;
  rep.quantities["degenerate"] = degenerate ? 1.0 : 0.0;
  if (degenerate) {
    rep.quantities["ratio"] = 0.0;
    rep.pass = true;
  } else {
    const double ratio = std::abs(pairing) / bound;
    rep.quantities["ratio"] = ratio;
    rep.pass = std::isfinite(ratio) && constants.within_upper(ratio, constants.apriori);
  }
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport distortion_identity_check(const MapField& f, double delta,
                                             const TestFunction& phi, const Domain& domain,
                                             std::span<const double> eps_seq,
                                             const PairingQuadrature& quad, double tolerance) {
  const auto start = std::chrono::steady_clock::now();
  if (delta == 0.0) throw std::invalid_argument("distortion delta must be nonzero");
  domain.require_planar("distortion identity");
  const PairingResult base = jac_pairing(f, phi, domain, eps_seq, quad);
  const PairingResult distorted = jac_pairing(distort(f, delta), phi, domain, eps_seq, quad);
  const double curl = curl_pairing(f, phi, domain, quad);
  const double mass = base.phi_integral;
  const double residual =
      distorted.extrapolated - base.extrapolated - delta * delta * mass - delta * curl;

  VerificationReport rep;
  rep.check_id = "jacobian.distortion." + f.label;
  rep.paper_anchor = "rotation-distortion";
  rep.quantities["delta"] = delta;
  rep.quantities["jac_f"] = base.extrapolated;
  rep.quantities["jac_f_delta"] = distorted.extrapolated;
  rep.quantities["curl"] = curl;
  rep.quantities["phi_integral"] = mass;
  rep.quantities["residual"] = residual;
  rep.quantities["relative_residual"] = std::abs(residual) / mass;
  rep.pass = std::abs(residual) < tolerance * mass;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

}  // namespace fracdeg
