#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdeg/auxfn.hpp"
#include "fracdeg/types.hpp"

using namespace fracdeg;

TEST_CASE("d profile values") {
  const auto d0 = d_eval(2.0, 0.0);
  CHECK(d0.value == 1.25);
  CHECK(d0.derivative == 0.0);
  const auto d1 = d_eval(2.0, 1.0);
  CHECK(d1.value == doctest::Approx(1.0));
  CHECK(d1.derivative == doctest::Approx(-1.0));
  const auto d2 = d_eval(2.0, 2.0);
  CHECK(d2.value == doctest::Approx(0.5));
  CHECK(d2.derivative == doctest::Approx(-0.25));
  CHECK_THROWS_AS(d_eval(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(d_eval(2.0, -1.0), std::invalid_argument);
}

TEST_CASE("d_c is flat near zero and equals 1/t from c/2 on") {
  for (double c : {0.5, 1.0, 2.0, 3.0}) {
    CAPTURE(c);
    CHECK(d_eval(c, 0.0).value == doctest::Approx(2.5 / c));
    CHECK(d_eval(c, c / 4).value == doctest::Approx(2.5 / c));
    for (double t : {c / 2, c, 5 * c}) {
      CHECK(d_eval(c, t).value == doctest::Approx(1.0 / t));
      CHECK(d_eval(c, t).derivative == doctest::Approx(-1.0 / (t * t)));
    }
  }
}

TEST_CASE("d profile is C^1 with d + t d' >= 0") {
  for (double c : {0.7, 2.0}) {
    for (double seam : {c / 4, c / 2}) {
      const double below = std::nextafter(seam, 0.0);
      const double above = std::nextafter(seam, 1e9);
      CHECK(d_eval(c, below).value == doctest::Approx(d_eval(c, above).value).epsilon(1e-12));
      CHECK(d_eval(c, below).derivative == doctest::Approx(d_eval(c, above).derivative).epsilon(1e-12));
    }
    for (int k = 0; k <= 4000; ++k) {
      const double t = 4.0 * c * k / 4000;
      const auto g = d_eval(c, t);
      REQUIRE(g.value + t * g.derivative >= -1e-14);
      const double h = 1e-6;
      if (t > h) {
        const double fd = (d_eval(c, t + h).value - d_eval(c, t - h).value) / (2 * h);
        REQUIRE(std::abs(fd - g.derivative) < 1e-4 * (1.0 + std::abs(g.derivative)) / c);
      }
    }
  }
}

TEST_CASE("pi profile values") {
  CHECK(pi_eval(1.0, 2, 0.5).value == 1.0);
  CHECK(pi_eval(1.0, 2, 2.0).value == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(pi_eval(1.0, 3, 3.0).value == doctest::Approx(std::cbrt(25.5) / 3.0));
  CHECK_THROWS_AS(pi_eval(0.0, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pi_eval(1.0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pi_eval(1.0, 2, -0.1), std::invalid_argument);
}

TEST_CASE("pi profile is C^1 across its seams") {
  for (int n : {2, 3, 4}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (double seam : {lambda, 2 * lambda}) {
        const auto a = pi_eval(lambda, n, std::nextafter(seam, 0.0));
        const auto b = pi_eval(lambda, n, std::nextafter(seam, 1e9));
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
        CHECK(a.derivative == doctest::Approx(b.derivative).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("pi_lambda is a rescaling") {
  for (double t : {0.3, 1.4, 2.5, 7.0}) {
    const auto base = pi_eval(1.0, 2, t);
    const auto scaled = pi_eval(3.0, 2, 3.0 * t);
    CHECK(scaled.value == doctest::Approx(base.value));
    CHECK(scaled.derivative == doctest::Approx(base.derivative / 3.0));
  }
}

TEST_CASE("W has the radial eigenvector and the stated determinant") {
  const RadialProfile d{ProfileKind::d_profile, 2.0, 2};
  CHECK((W_matrix(d, Vec2::Zero()) - 1.25 * Mat2::Identity()).norm() == 0.0);
  CHECK(std::abs(W_matrix(d, Vec2(2, 0)).determinant()) < 1e-15);
  CHECK(std::abs(detW(d, Vec2(0, 3))) < 1e-15);

  const RadialProfile pi{ProfileKind::pi_profile, 1.0, 2};
  CHECK((W_matrix(pi, Vec2(0.3, 0.4)) - Mat2::Identity()).norm() == 0.0);
  CHECK(detW(pi, Vec2(0.6, 0.8)) == 1.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const auto& g : {d, pi, RadialProfile{ProfileKind::d_profile, 0.8, 2}}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Vec2 v(u(rng), u(rng));
      const Mat2 W = W_matrix(g, v);
      const auto gv = g(v.norm());
      const double radial = gv.value + v.norm() * gv.derivative;
      REQUIRE((W * v - radial * v).norm() < 1e-12 * (1.0 + v.norm()));
      const Vec2 perp(-v(1), v(0));
      REQUIRE((W * perp - gv.value * perp).norm() < 1e-12 * (1.0 + v.norm()));
      REQUIRE(W.determinant() == doctest::Approx(detW(g, v)).epsilon(1e-10).scale(1.0));
      REQUIRE(detW(g, v) >= -1e-14);
    }
  }
}

TEST_CASE("detW of the pi profile is r'(t) / (n t^(n-1)) and stays below 1 far out") {
  // t^n pi^n = r, so differentiating gives n t^(n-1) pi^(n-1) (pi + t pi') = r'.
  for (int n : {2, 3}) {
    const RadialProfile pi{ProfileKind::pi_profile, 1.0, n};
    for (double t = 1.05; t < 6.0; t += 0.05) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(0) = t;
      const double s = t - 1.0;
      const double dr = t < 2.0 ? n * std::pow(t, n - 1) - (5.0 * s - 4.5 * s * s) : n * std::pow(t, n - 1) - 0.5;
      CAPTURE(t);
      CHECK(detW(pi, v) == doctest::Approx(dr / (n * std::pow(t, n - 1))).epsilon(1e-10));
      CHECK(detW(pi, v) > 0.0);
      if (t > 2.0) CHECK(detW(pi, v) < 1.0);
    }
  }
}

TEST_CASE("templated evaluation in long double") {
  const auto g = d_eval<long double>(2.0L, 1.0L);
  CHECK(static_cast<double>(g.value) == doctest::Approx(1.0));
  const Eigen::Matrix<long double, 2, 1> v(2.0L, 0.0L);
  const RadialProfile d;
  CHECK(std::abs(static_cast<double>(detW(d, v))) < 1e-15);
}
