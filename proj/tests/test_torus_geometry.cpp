#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/rng.hpp"
#include "rgg_spectra/torus_geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

using namespace rgg;

namespace {
double dist(std::vector<double> a, std::vector<double> b, const Metric& m) { return torus_distance(a, b, m); }
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("torus distance examples") {
  CHECK(dist({0.95, 0.5}, {0.05, 0.5}, Metric::infinity()) == doctest::Approx(0.1).epsilon(1e-14));
  for (double p : {1.0, 2.0, 3.5, kInf}) CHECK(dist({0.3, 0.7}, {0.3, 0.7}, Metric(p)) == 0.0);
  CHECK(dist({0.1}, {0.9}, Metric(1.0)) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(dist({0.0, 0.0}, {0.5, 0.5}, Metric::euclidean()) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(dist({0.1, 0.2}, {0.1}, Metric::infinity()), ArgumentError);
}

TEST_CASE("metric parsing") {
  CHECK(Metric::parse("inf").is_infinity());
  CHECK(Metric::parse("2").p() == 2.0);
  CHECK(Metric::infinity().to_string() == "inf");
  CHECK_THROWS_AS(Metric(0.5), ArgumentError);
  CHECK_THROWS_AS(Metric::parse("banana"), ArgumentError);
}

TEST_CASE("torus distance is a metric on random triples") {
  Rng rng(2024);
  for (double p : {1.0, 2.0, kInf}) {
    const Metric m(p);
    for (int trial = 0; trial < 10000; ++trial) {
      const std::size_t d = 1 + trial % 3;
      std::vector<double> a(d), b(d), c(d);
      for (std::size_t k = 0; k < d; ++k) {
        a[k] = rng.uniform();
        b[k] = rng.uniform();
        c[k] = rng.uniform();
      }
      const double ab = dist(a, b, m), ba = dist(b, a, m), bc = dist(b, c, m), ac = dist(a, c, m);
      REQUIRE(ab == ba);
      REQUIRE(ab > 0.0);
      REQUIRE(ac <= ab + bc + 1e-15);
      REQUIRE(ab == doctest::Approx(oracle::torus_distance(a, b, p)).epsilon(1e-13));
      // l_p is at most d^{1/p} times l_inf
      const double bound = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(d), 1.0 / p);
      REQUIRE(ab <= bound * dist(a, b, Metric::infinity()) * (1 + 1e-14));
    }
  }
}

TEST_CASE("ball volume and radius inversion") {
  CHECK(radius_for_gamma(16, 1024, 1, Metric::infinity()) == 0.0078125);
  CHECK(radius_for_gamma(12, 4096, 2, Metric::infinity()) == doctest::Approx(std::sqrt(12.0 / 4096) / 2).epsilon(1e-15));
  CHECK(radius_for_gamma(12, 4096, 2, Metric::infinity()) == doctest::Approx(0.027063).epsilon(1e-4));
  CHECK(radius_for_gamma(12, 4096, 2, Metric::euclidean()) ==
        doctest::Approx(std::sqrt(12.0 / (std::numbers::pi * 4096))).epsilon(1e-14));
  // 3-d euclidean ball: 4/3 pi r^3
  CHECK(ball_volume(0.1, 3, Metric::euclidean()) == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 1e-3).epsilon(1e-13));
  CHECK(ball_volume(0.1, 2, Metric(1.0)) == doctest::Approx(2 * 0.01).epsilon(1e-13));

  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    for (std::size_t d = 1; d <= 4; ++d) {
      for (double gamma : {1.0, 5.0, 12.0, 40.0}) {
        const std::size_t n = 100000;
        const double r = radius_for_gamma(gamma, n, d, Metric(p));
        CHECK(ball_volume(r, d, Metric(p)) * static_cast<double>(n) == doctest::Approx(gamma).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(radius_for_gamma(300, 256, 1, Metric::infinity()), RegimeError);
  CHECK_THROWS_AS(radius_for_gamma(64, 64, 2, Metric::infinity()), RegimeError);
  CHECK_THROWS_AS(radius_for_gamma(0, 64, 2, Metric::infinity()), ArgumentError);
}

TEST_CASE("uniform sampling") {
  CHECK_THROWS_AS(sample_uniform_points(0, 2, 1), ArgumentError);
  const auto a = sample_uniform_points(500, 3, 77);
  const auto b = sample_uniform_points(500, 3, 77);
  CHECK(a.coords() == b.coords());
  CHECK(a.seed() == 77u);
  CHECK(sample_uniform_points(500, 3, 78).coords() != a.coords());

  const auto big = sample_uniform_points(100000, 2, 5);
  for (std::size_t axis = 0; axis < 2; ++axis) {
    double mean = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) {
      const double c = big.point(i)[axis];
      REQUIRE(c >= 0.0);
      REQUIRE(c < 1.0);
      mean += c;
    }
    mean /= static_cast<double>(big.size());
    CHECK(std::abs(mean - 0.5) < 0.005);
  }
}

TEST_CASE("point set invariants") {
  CHECK_THROWS_AS(TorusPointSet(2, {0.1, 1.0}), ArgumentError);
  CHECK_THROWS_AS(TorusPointSet(2, {0.1, -0.1}), ArgumentError);
  CHECK_THROWS_AS(TorusPointSet(2, {0.1, 0.2, 0.3}), ArgumentError);
  CHECK_THROWS_AS(TorusPointSet(0, {0.1}), ArgumentError);
}

TEST_CASE("grid points") {
  const auto g = grid_points(4, 2);
  REQUIRE(g.size() == 4);
  CHECK(g.coords() == std::vector<double>{0, 0, 0, 0.5, 0.5, 0, 0.5, 0.5});
  const auto line = grid_points(3, 1);
  CHECK(line.point(1)[0] == doctest::Approx(1.0 / 3));
  CHECK(line.point(2)[0] == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(grid_points(8, 2), ArgumentError);
  CHECK(exact_root(4096, 2) == 64u);
  CHECK(exact_root(4096, 3) == 16u);
  CHECK_FALSE(exact_root(4095, 2).has_value());

  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{64, 1}, {36, 2}, {125, 3}}) {
    const auto pts = grid_points(n, d);
    const double side = static_cast<double>(*exact_root(n, d));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double nearest = 1.0;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i != j) nearest = std::min(nearest, torus_distance(pts.point(i), pts.point(j), Metric::infinity()));
      }
      REQUIRE(nearest == doctest::Approx(1.0 / side).epsilon(1e-14));
    }
  }
}

TEST_CASE("points csv round trip") {
  const auto pts = sample_uniform_points(50, 3, 9);
  std::stringstream ss;
  write_points_csv(ss, pts);
  const std::string text = ss.str();
  CHECK(text.rfind("3,50\n", 0) == 0);
  const auto back = read_points_csv(ss);
  CHECK(back.coords() == pts.coords());
  std::stringstream bad("2,3\n0.1,0.2\n");
  CHECK_THROWS_AS(read_points_csv(bad), ArgumentError);
}
