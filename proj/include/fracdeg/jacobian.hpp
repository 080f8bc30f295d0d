#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdeg/constants.hpp"
#include "fracdeg/core.hpp"
#include "fracdeg/maps.hpp"
#include "fracdeg/report.hpp"
#include "fracdeg/sobolev.hpp"

namespace fracdeg {

/// Quadrature over the support of a bump: Gauss-Legendre radial nodes times
/// trapezoid angular nodes.
struct PairingQuadrature {
  int radial = 24;
  int angular = 64;
  int kernel_samples = 16;
};

/// Distributional Jacobian pairing with its mollification trend.
struct PairingResult {
  /// Final trend entry (smallest epsilon).
  double value = 0.0;
  /// (epsilon, int det(D f_eps) phi), epsilon decreasing.
  std::vector<std::pair<double, double>> epsilon_trend;
  bool converged = false;
  /// Richardson limit of the last two entries in epsilon^2.
  double extrapolated = 0.0;
  /// int det(Df) phi from the exact differential, for smooth maps.
  std::optional<double> exact;
  /// int phi over the same nodes.
  double phi_integral = 0.0;
  /// sup |D f_eps|_F^2 over the nodes; the scale for tolerances.
  double scale = 0.0;
};

/// int phi by the bump quadrature.
double bump_integral(const TestFunction& phi, const PairingQuadrature& quad = {});

/// Throws std::invalid_argument when the support of phi, widened by
/// `margin`, is not compactly inside the planar domain.
void require_interior_support(const TestFunction& phi, const Domain& domain, double margin);

/// Pairs det(D(f * eta_eps)) with phi for each epsilon in `eps_seq` (decreasing,
/// at least three entries).
PairingResult jac_pairing(const MapField& f, const TestFunction& phi, const Domain& domain,
                          std::span<const double> eps_seq, const PairingQuadrature& quad = {});

/// -int (f2 d1 phi - f1 d2 phi), i.e. the pairing of d1 f2 - d2 f1 with phi.
double curl_pairing(const MapField& f, const TestFunction& phi, const Domain& domain,
                    const PairingQuadrature& quad = {});

enum class SignVerdict { nonnegative_evidence, positive_evidence, sign_changing, null };

std::string to_string(SignVerdict v);

/// True for the two verdicts that support Jac(f) >= 0.
inline bool supports_nonnegative(SignVerdict v) {
  return v == SignVerdict::nonnegative_evidence || v == SignVerdict::positive_evidence;
}

struct SignClassification {
  SignVerdict verdict = SignVerdict::null;
  double min_pairing = 0.0;
  /// Bump achieving the minimum of pairing / int phi.
  std::optional<TestFunction> witness;
  std::vector<double> pairings;
  std::vector<double> tolerances;
};

/// Relative tolerance factor: tol(phi) = kSignTolerance * int phi * scale.
inline constexpr double kSignTolerance = 1e-6;

/// Evidence verdict over a finite family of bumps.
SignClassification sign_classify(const MapField& f, const Domain& domain,
                                 std::span<const TestFunction> family,
                                 std::span<const double> eps_seq,
                                 const PairingQuadrature& quad = {});

/// |int det(Df) phi| <= C [f]^n_{W^{s,n/s}} [phi]_{W^{(1-s)n, 1/(1-s)}}.
VerificationReport apriori_bound_check(const MapField& f, const TestFunction& phi,
                                       const Domain& domain, double s,
                                       std::span<const double> eps_seq,
                                       const QuadratureSpec& seminorm_quad,
                                       const FittedConstants& constants,
                                       const PairingQuadrature& quad = {});

/// Residual of Jac(f_delta)[phi] = Jac(f)[phi] + delta^2 int phi + delta curl(f)[phi],
/// required below `tolerance` * int phi. Here curl(f)[phi] pairs d1 f2 - d2 f1
/// with phi, so det(Df + delta J) = det Df + delta^2 + delta (d1 f2 - d2 f1).
VerificationReport distortion_identity_check(const MapField& f, double delta,
                                             const TestFunction& phi, const Domain& domain,
                                             std::span<const double> eps_seq,
                                             const PairingQuadrature& quad = {},
                                             double tolerance = 1e-3);

}  // namespace fracdeg
