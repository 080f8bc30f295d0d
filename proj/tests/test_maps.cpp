#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdeg/maps.hpp"

using namespace fracdeg;

namespace {

MapParams with_k(int k) {
  MapParams p;
  p.k = k;
  return p;
}

double brute_diameter(const Points2& pts) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < pts.cols(); ++i)
    for (Eigen::Index j = i + 1; j < pts.cols(); ++j) best = std::max(best, (pts.col(i) - pts.col(j)).norm());
  return best;
}

}  // namespace

TEST_CASE("gallery values") {
  const MapField p2 = gallery("power-2");
  CHECK((p2(Vec2(1, 0)) - Vec2(1, 0)).norm() < 1e-15);
  CHECK((p2(Vec2(0, 1)) - Vec2(-1, 0)).norm() < 1e-15);

  const MapField conj = gallery("conjugation");
  CHECK((conj(Vec2(0, 1)) - Vec2(0, -1)).norm() < 1e-15);

  const MapField ll = gallery("loglog");
  CHECK(ll(Vec2(1, 0))(0) == doctest::Approx(std::log(std::log(2.0))));
  CHECK(ll(Vec2(0, 0))(0) == doctest::Approx(std::log(std::log(2e8))));
  CHECK(ll(Vec2(0, 1))(1) == 0.0);

  CHECK((gallery("constant")(Vec2(0.3, 0.1)) - Vec2(2, 0)).norm() == 0.0);
  CHECK((gallery("gradient-quartic")(Vec2(0.5, -2)) - Vec2(0.125, -8)).norm() < 1e-15);
  CHECK((gallery("rotation")(Vec2(1, 2)) - Vec2(-2, 1)).norm() < 1e-15);
}

TEST_CASE("gallery rejects bad names and exponents") {
  CHECK_THROWS_AS(gallery("spiral"), std::invalid_argument);
  CHECK_THROWS_AS(gallery("power", with_k(0)), std::invalid_argument);
  CHECK_THROWS_AS(gallery("conjugated-power", with_k(0)), std::invalid_argument);
  CHECK(gallery("power", with_k(3)).label == "power-3");
  CHECK(gallery("conjugated-power-2").label == "conjugated-power-2");
  CHECK(gallery("loglog-counterexample").smoothness == Smoothness::discontinuous);
  for (const auto& name : gallery_names()) CHECK_NOTHROW(gallery(name));
}

TEST_CASE("determinants of the gallery") {
  CHECK(jacobian_det(gallery("identity"), Vec2(0.3, 0.7)) == doctest::Approx(1.0));
  const double r = 0.6;
  const Vec2 z = r * Vec2(std::cos(0.4), std::sin(0.4));
  CHECK(jacobian_det(gallery("power-2"), z) == doctest::Approx(4.0 * r * r));
  CHECK(jacobian_det(gallery("conjugation"), z) == doctest::Approx(-1.0));
  CHECK(std::abs(jacobian_det(gallery("loglog"), z)) < 1e-12);
  for (int k : {-3, -2, -1, 1, 2, 3}) {
    const double expected = k * k * std::pow(r, 2 * (k - 1));
    CHECK(jacobian_det(gallery("power", with_k(k)), z) == doctest::Approx(expected));
  }
  for (int k : {1, 2, 3}) {
    const double expected = -k * k * std::pow(r, 2 * (k - 1));
    CHECK(jacobian_det(gallery("conjugated-power", with_k(k)), z) == doctest::Approx(expected));
  }
  CHECK_THROWS_AS(jacobian_det(gallery("power", with_k(-1)), Vec2::Zero()), std::domain_error);
}

TEST_CASE("exact differentials agree with finite differences at second order") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::vector<Vec2> pts;
  while (pts.size() < 100) {
    const Vec2 x(u(rng), u(rng));
    if (x.norm() < 0.9 && x.norm() > 0.1) pts.push_back(x);
  }
  for (const auto& name : {"identity", "power-2", "power-3", "conjugation", "gradient-quartic",
                           "rotation", "conjugated-power-3"}) {
    const MapField f = gallery(name);
    REQUIRE(f.has_differential());
    auto worst = [&](double h) {
      double e = 0.0;
      for (const auto& x : pts)
        e = std::max(e, std::abs(f.differential(x).determinant() -
                                 finite_difference_differential(f, x, h).determinant()));
      return e;
    };
    const double e1 = worst(1e-2);
    const double e2 = worst(5e-3);
    CAPTURE(name);
    if (e1 > 1e-10) CHECK(std::log2(e1 / e2) > 1.8);
    else CHECK(e2 < 1e-10);
  }
  for (int k : {-3, -1, 2}) {
    const MapField f = gallery("power", with_k(k));
    const Vec2 x(0.4, -0.3);
    const Mat2 fd = finite_difference_differential(f, x, 1e-5);
    CHECK((f.differential(x) - fd).norm() < 1e-7);
  }
}

TEST_CASE("test function bump") {
  const TestFunction phi(Vec2(0.2, 0.1), 0.3);
  CHECK(phi(Vec2(0.2, 0.1)) == doctest::Approx(std::exp(-1.0)));
  CHECK(phi(Vec2(0.5, 0.1)) == 0.0);
  CHECK(phi(Vec2(0.49, 0.1)) > 0.0);
  const Vec2 x(0.3, 0.2);
  const double h = 1e-5;
  const Vec2 fd((phi(x + Vec2(h, 0)) - phi(x - Vec2(h, 0))) / (2 * h),
                (phi(x + Vec2(0, h)) - phi(x - Vec2(0, h))) / (2 * h));
  CHECK((phi.gradient(x) - fd).norm() < 1e-8);
  CHECK_THROWS_AS(TestFunction(Vec2::Zero(), 0.0), std::invalid_argument);
}

TEST_CASE("bump family geometry") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const auto fam = bump_family(disk, 5, 0.15);
  REQUIRE(fam.size() == 25);
  for (const auto& phi : fam) CHECK(disk.distance_to_boundary(phi.center()) - phi.radius() > 0.08);
  const auto avoiding = bump_family(disk, 5, 0.15, Vec2::Zero(), 0.1);
  for (const auto& phi : avoiding) CHECK(phi.center().norm() >= 0.25);
}

TEST_CASE("mollification") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const MollifierSpec spec{0.05, 16};
  const MapField id = mollify(gallery("identity"), spec, disk);
  CHECK((id(Vec2(0.3, -0.2)) - Vec2(0.3, -0.2)).norm() < 1e-12);
  const MapField c = mollify(gallery("constant"), spec, disk);
  CHECK((c(Vec2(0.1, 0.1)) - Vec2(2, 0)).norm() < 1e-12);
  // The second moments of a radial kernel cancel in z^2.
  const MapField p2 = mollify(gallery("power-2"), spec, disk);
  CHECK((p2(Vec2(0.5, 0)) - Vec2(0.25, 0)).norm() < 1e-10);
  CHECK(std::abs(p2.differential(Vec2(0.5, 0)).determinant() - 1.0) < 1e-10);

  // Uniform convergence on a compact subset for a cubic.
  const MapField g = gallery("gradient-quartic");
  auto sup_err = [&](double eps) {
    const MapField m = mollify(g, {eps, 16}, disk);
    double e = 0.0;
    for (double x = -0.5; x <= 0.5; x += 0.1)
      for (double y = -0.5; y <= 0.5; y += 0.1) e = std::max(e, (m(Vec2(x, y)) - g(Vec2(x, y))).norm());
    return e;
  };
  CHECK(sup_err(0.02) < sup_err(0.08));
  CHECK(sup_err(0.02) < 1e-3);

  CHECK_THROWS_AS(p2(Vec2(0.97, 0)), std::domain_error);
  CHECK_THROWS_AS(mollify(gallery("identity"), {2.0, 16}, disk), std::invalid_argument);
}

TEST_CASE("distortion and scaling") {
  const MapField f = distort(gallery("identity"), 0.5);
  CHECK((f(Vec2(1, 2)) - Vec2(0, 2.5)).norm() < 1e-15);
  CHECK(jacobian_det(f, Vec2(0.1, 0.2)) == doctest::Approx(1.25));
  const MapField g = scaled(gallery("power-2"), -2.0);
  CHECK(jacobian_det(g, Vec2(0.5, 0)) == doctest::Approx(4.0));
}

TEST_CASE("circle traces and image diameter") {
  const CircleTrace t = trace_circle(gallery("power-2"), Vec2::Zero(), 0.5, 64);
  CHECK(t.size() == 64);
  CHECK(t.map_label == "power-2");
  CHECK_THROWS_AS(trace_circle(gallery("identity"), Vec2::Zero(), 1.0, 16), std::invalid_argument);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Points2 cloud(2, 200);
    for (Eigen::Index k = 0; k < cloud.cols(); ++k) cloud.col(k) = Vec2(n(rng), 0.3 * n(rng));
    CHECK(image_diameter(cloud) == doctest::Approx(brute_diameter(cloud)).epsilon(1e-14));
  }
  CHECK(trace_oscillation(gallery("identity"), Vec2::Zero(), 0.3, 128) == doctest::Approx(0.6));
  CHECK(trace_oscillation(gallery("power-2"), Vec2::Zero(), 0.5, 128) == doctest::Approx(0.5));
  CHECK(trace_oscillation(gallery("constant"), Vec2::Zero(), 0.5, 128) == 0.0);
}
