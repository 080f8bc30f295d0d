#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace fracdeg {

/// Value and first derivative of a radial profile.
template <typename T>
struct ProfileValue {
  T value;
  T derivative;
};

/// The C^{1,1} profile d_c: constant near 0, 1/t for t >= c/2, with
/// d + t d' >= 0 everywhere. The base profile (c = 2) is 5/4 on [0, 1/2],
/// -t^2 + t + 1 on [1/2, 1] and 1/t beyond; d_c(t) = (2/c) d(2t/c).
template <typename T>
ProfileValue<T> d_eval(T c, T t) {
  if (!(c > T(0))) throw std::invalid_argument("d profile needs c > 0");
  if (t < T(0)) throw std::invalid_argument("d profile needs t >= 0");
  const T u = T(2) * t / c;
  T d, dd;
  if (u <= T(0.5)) {
    d = T(1.25);
    dd = T(0);
  } else if (u <= T(1)) {
    d = -u * u + u + T(1);
    dd = -T(2) * u + T(1);
  } else {
    d = T(1) / u;
    dd = -T(1) / (u * u);
  }
  return {T(2) / c * d, T(4) / (c * c) * dd};
}

/// r(t) = t^n pi(t)^n for lambda = 1: t^n on [0, 1], t^n - a(t) on (1, 2)
/// with the Hermite cubic a(1 + s) = 2.5 s^2 - 1.5 s^3, and t^n - t/2 on
/// [2, inf).
template <typename T>
ProfileValue<T> pi_r(int n, T t) {
  const T tn = std::pow(t, n);
  const T dtn = n * std::pow(t, n - 1);
  if (t <= T(1)) return {tn, dtn};
  if (t < T(2)) {
    const T s = t - T(1);
    return {tn - (T(2.5) * s * s - T(1.5) * s * s * s), dtn - (T(5) * s - T(4.5) * s * s)};
  }
  return {tn - t / T(2), dtn - T(0.5)};
}

/// pi_lambda(t) = pi(t / lambda) with pi = r^{1/n} / t, identically 1 on
/// [0, lambda] and with pi^{n-1}(pi + t pi') < 1 beyond 2 lambda.
template <typename T>
ProfileValue<T> pi_eval(T lambda, int n, T t) {
  if (!(lambda > T(0))) throw std::invalid_argument("pi profile needs lambda > 0");
  if (n < 2) throw std::invalid_argument("pi profile needs n >= 2");
  if (t < T(0)) throw std::invalid_argument("pi profile needs t >= 0");
  const T u = t / lambda;
  if (u <= T(1)) return {T(1), T(0)};
  const auto [r, dr] = pi_r(n, u);
  const T root = std::pow(r, T(1) / n);
  const T value = root / u;
  const T derivative = root / r * dr / (T(n) * u) - root / (u * u);
  return {value, derivative / lambda};
}

enum class ProfileKind { d_profile, pi_profile };

struct RadialProfile {
  ProfileKind kind = ProfileKind::d_profile;
  /// c for the d profile, lambda for the pi profile.
  double scale = 2.0;
  /// Dimension used by the pi profile.
  int n = 2;

  template <typename T>
  ProfileValue<T> operator()(T t) const {
    if (kind == ProfileKind::d_profile) return d_eval(T(scale), t);
    return pi_eval(T(scale), n, t);
  }
};

/// W(v) = g(|v|) I + (g'(|v|) / |v|) v v^T for the profile g; the derivative
/// term is dropped at v = 0, where both profiles are flat.
template <typename Derived>
auto W_matrix(const RadialProfile& profile, const Eigen::MatrixBase<Derived>& v) {
  using T = typename Derived::Scalar;
  using Mat = Eigen::Matrix<T, Derived::RowsAtCompileTime, Derived::RowsAtCompileTime>;
  const T norm = v.norm();
  const auto g = profile(norm);
  Mat W = g.value * Mat::Identity(v.size(), v.size());
  if (norm > T(0)) W += (g.derivative / norm) * (v * v.transpose());
  return W;
}

/// g^{n-1} (g + |v| g'), the product of the eigenvalues of W(v).
template <typename Derived>
typename Derived::Scalar detW(const RadialProfile& profile, const Eigen::MatrixBase<Derived>& v) {
  using T = typename Derived::Scalar;
  const T norm = v.norm();
  const auto g = profile(norm);
  return std::pow(g.value, static_cast<int>(v.size()) - 1) * (g.value + norm * g.derivative);
}

}  // namespace fracdeg
