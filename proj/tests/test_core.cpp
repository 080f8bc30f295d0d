#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "fracdeg/core.hpp"

using namespace fracdeg;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("domain construction rejects degenerate geometry") {
  CHECK_THROWS_AS(Domain::ball(VecX::Zero(2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::ball(VecX::Zero(1), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::annulus(VecX::Zero(2), 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Domain::annulus(VecX::Zero(2), 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::rectangle(Vec2(0, 0), Vec2(1, 0)), std::invalid_argument);
  CHECK_NOTHROW(Domain::rectangle(Vec2(0, 0), Vec2(1, 2)));
}

TEST_CASE("measure, diameter and boundary distance") {
  const Domain disk = Domain::disk(Vec2(1, 0), 2.0);
  CHECK(disk.measure() == doctest::Approx(4.0 * kPi));
  CHECK(disk.diameter() == doctest::Approx(4.0));
  CHECK(disk.distance_to_boundary(Vec2(1.5, 0)) == doctest::Approx(1.5));
  CHECK(disk.contains(Vec2(2.9, 0)));
  CHECK_FALSE(disk.contains(Vec2(3.0, 0)));

  const Domain ann = Domain::annulus(VecX::Zero(2), 0.5, 1.0);
  CHECK(ann.measure() == doctest::Approx(0.75 * kPi));
  CHECK_FALSE(ann.contains(Vec2(0.25, 0)));
  CHECK(ann.distance_to_boundary(Vec2(0.6, 0)) == doctest::Approx(0.1));

  const Domain box = Domain::rectangle(Vec2(0, 0), Vec2(2, 1));
  CHECK(box.measure() == doctest::Approx(2.0));
  CHECK(box.diameter() == doctest::Approx(std::sqrt(5.0)));
  CHECK(box.distance_to_boundary(Vec2(1.0, 0.25)) == doctest::Approx(0.25));
}

TEST_CASE("interior quadrature weights reproduce measures") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  CHECK(sample_domain(disk, {128}).weights.sum() == doctest::Approx(kPi).epsilon(0.01));

  const Domain box = Domain::rectangle(Vec2(0, 0), Vec2(1, 1));
  CHECK(sample_domain(box, {64}).weights.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const Domain ann = Domain::annulus(VecX::Zero(2), 0.5, 1.0);
  CHECK(sample_domain(ann, {128}).weights.sum() == doctest::Approx(0.75 * kPi).epsilon(0.01));
}

TEST_CASE("weight sums converge at first order or better") {
  // The masked cartesian grid is the only rule whose measure is not exact.
  const Domain ball3 = Domain::ball(VecX::Zero(3), 1.0);
  const double exact = 4.0 / 3.0 * kPi;
  const double e1 = std::abs(sample_domain(ball3, {16}).weights.sum() - exact);
  const double e2 = std::abs(sample_domain(ball3, {32}).weights.sum() - exact);
  const double e3 = std::abs(sample_domain(ball3, {64}).weights.sum() - exact);
  CHECK(e3 < 0.02 * exact);
  CHECK(std::max(e2, e3) < e1);
}

TEST_CASE("sampled points are strictly interior") {
  for (const Domain& d : {Domain::disk(Vec2::Zero(), 1.0),
                          Domain::annulus(VecX::Zero(2), 0.3, 1.0),
                          Domain::rectangle(Vec2(-1, 0), Vec2(1, 0.5))}) {
    const SampleSet s = sample_domain(d, {32, 11});
    for (Eigen::Index k = 0; k < s.size(); ++k) REQUIRE(d.contains(s.points.col(k)));
  }
}

TEST_CASE("jittered sampling is reproducible") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const SampleSet a = sample_domain(disk, {32, 5});
  const SampleSet b = sample_domain(disk, {32, 5});
  const SampleSet c = sample_domain(disk, {32, 6});
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
}

TEST_CASE("monte carlo sampling") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const SampleSet s = sample_domain_monte_carlo(disk, 1000, 3);
  CHECK(s.size() == 1000);
  CHECK(s.weights.sum() == doctest::Approx(kPi));
  CHECK(s.points == sample_domain_monte_carlo(disk, 1000, 3).points);
  CHECK_THROWS_AS(sample_domain_monte_carlo(disk, 0, 3), std::invalid_argument);
}

TEST_CASE("sample_circle") {
  CHECK_THROWS_AS(sample_circle(Vec2::Zero(), 1.0, 4), std::invalid_argument);
  const Points2 eight = sample_circle(Vec2::Zero(), 1.0, 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::atan2(eight(1, k), eight(0, k)) ==
          doctest::Approx(std::remainder(2.0 * kPi * k / 8, 2.0 * kPi)));
  }
  const Points2 shifted = sample_circle(Vec2(1, 0), 2.0, 16);
  CHECK(shifted(0, 0) == doctest::Approx(3.0));
  CHECK(shifted(1, 0) == doctest::Approx(0.0));

  const Points2 fine = sample_circle(Vec2::Zero(), 1.0, 360);
  for (int k = 0; k < 360; ++k) {
    const double gap = std::acos(std::clamp(fine.col(k).dot(fine.col((k + 1) % 360)), -1.0, 1.0));
    REQUIRE(std::abs(gap - 2.0 * kPi / 360) < 1e-12);
  }

  const Vec2 v(0.3, -2.0);
  const Points2 moved = sample_circle(v, 1.5, 64);
  const Points2 base = sample_circle(Vec2::Zero(), 1.5, 64);
  CHECK((moved.colwise() - v - base).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gauss-legendre matches the boost tables") {
  const Rule1d rule = gauss_legendre(10, -1.0, 1.0);
  using B = boost::math::quadrature::gauss<double, 10>;
  // Boost stores the non-negative half of the symmetric rule.
  std::vector<std::pair<double, double>> expected;
  for (std::size_t k = 0; k < B::abscissa().size(); ++k) {
    expected.emplace_back(B::abscissa()[k], B::weights()[k]);
    if (B::abscissa()[k] != 0.0) expected.emplace_back(-B::abscissa()[k], B::weights()[k]);
  }
  std::sort(expected.begin(), expected.end());
  std::vector<std::pair<double, double>> got;
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) got.emplace_back(rule.nodes(k), rule.weights(k));
  std::sort(got.begin(), got.end());
  REQUIRE(got.size() == expected.size());
  for (std::size_t k = 0; k < got.size(); ++k) {
    CHECK(got[k].first == doctest::Approx(expected[k].first).epsilon(1e-13));
    CHECK(got[k].second == doctest::Approx(expected[k].second).epsilon(1e-12));
  }
}

TEST_CASE("gauss-legendre integrates polynomials exactly on [a,b]") {
  const Rule1d rule = gauss_legendre(6, 0.5, 2.0);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) sum += rule.weights(k) * std::pow(rule.nodes(k), 11);
  CHECK(sum == doctest::Approx((std::pow(2.0, 12) - std::pow(0.5, 12)) / 12.0).epsilon(1e-13));
}

TEST_CASE("polar rule integrates smooth functions on a disk") {
  const SampleSet s = polar_rule(Vec2(0.2, -0.1), 0.5, 12, 32);
  CHECK(s.weights.sum() == doctest::Approx(kPi * 0.25).epsilon(1e-13));
  double second = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) second += s.weights(k) * (s.points.col(k) - Vec2(0.2, -0.1)).squaredNorm();
  CHECK(second == doctest::Approx(kPi * std::pow(0.5, 4) / 2.0).epsilon(1e-13));
}

TEST_CASE("quadrature spec validation") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate(disk));
  q.sample_count = 8;
  CHECK_THROWS_AS(q.validate(disk), std::invalid_argument);
  q.sample_count = 64;
  q.diagonal_exclusion_radius = 3.0;
  CHECK_THROWS_AS(q.validate(disk), std::invalid_argument);
  CHECK(parse_scheme("mc") == QuadratureScheme::monte_carlo);
  CHECK(parse_scheme("tensor-midpoint") == QuadratureScheme::tensor_midpoint);
  CHECK_THROWS_AS(parse_scheme("simpson"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec{2}.validate(), std::invalid_argument);
}
