#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rgg_spectra/analytic_spectrum.hpp"
#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/spectrum_analysis.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace rgg;

namespace {
SpectralDistribution esd(std::vector<double> v) { return SpectralDistribution(std::move(v)); }

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  if (n > 2 && rng() % 3 == 0) v[1] = v[0];  // ties
  return v;
}
}  // namespace

TEST_CASE("left continuous CDF with ties") {
  const auto s = esd({0.5, 0.1, 0.5, 0.9});
  CHECK(s.eigenvalues() == std::vector<double>{0.1, 0.5, 0.5, 0.9});
  CHECK(s.cdf(0.1) == 0.0);
  CHECK(s.cdf(0.5) == 0.25);
  CHECK(s.cdf_right(0.5) == 0.75);
  CHECK(s.cdf(0.50001) == 0.75);
  CHECK(s.cdf(10) == 1.0);
  CHECK(s.cdf(-10) == 0.0);
  CHECK_THROWS_AS(esd({}), ArgumentError);
}

TEST_CASE("dense eigensolve examples") {
  Eigen::MatrixXd k2(2, 2);
  k2 << 1, -1, -1, 1;
  auto v = symmetric_eigenvalues(k2);
  CHECK(v[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(2.0));
  Eigen::MatrixXd half(2, 2);
  half << 0.5, -0.5, -0.5, 0.5;
  v = symmetric_eigenvalues(half);
  CHECK(std::abs(v[0]) < 1e-15);
  CHECK(v[1] == doctest::Approx(1.0));

  const auto ring = assemble_dgg_laplacian(build_dgg(8, 1, 0.3, Metric::infinity()), 0.0);
  const auto numeric = full_spectrum(ring);
  const auto analytic = analytic_dgg_spectrum(8, 1, 4, 0.0);
  CHECK(std::abs(numeric.min()) < 1e-12);
  for (std::size_t i = 0; i < 8; ++i) CHECK(numeric.eigenvalues()[i] == doctest::Approx(analytic.eigenvalues()[i]).epsilon(1e-10));

  // residual check against an independent eigenvector solver
  const auto g = build_rgg(sample_uniform_points(120, 2, 5), 0.1, Metric::euclidean());
  const auto l = assemble_rgg_laplacian(g, 0.1);
  const auto values = full_spectrum(l).eigenvalues();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.entries());
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const Eigen::VectorXd vk = solver.eigenvectors().col(k);
    CHECK((l.entries() * vk - values[static_cast<std::size_t>(k)] * vk).norm() < 1e-10);
  }
}

TEST_CASE("levy distance examples") {
  CHECK(levy_distance(esd({0.2, 0.4}), esd({0.2, 0.4})).distance == 0.0);
  CHECK(levy_distance(esd({0.0, 1.0}), esd({1.0, 0.0})).distance == 0.0);
  const auto step = levy_distance(esd({0.0}), esd({0.3}));
  CHECK(step.distance == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(std::abs(step.distance - oracle::LevyGrid({0.0}, {0.3}).distance(1e-6)) <= 2e-6);
  CHECK(levy_distance(esd({0.0}), esd({1.7})).distance == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("levy bisection agrees with the grid oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_values(rng, 1 + rng() % 8);
    const auto b = random_values(rng, 1 + rng() % 8);
    const double fast = levy_distance(esd(a), esd(b)).distance;
    const double slow = oracle::LevyGrid(a, b).distance(1e-6);
    REQUIRE(std::abs(fast - slow) <= 2e-6);
  }
}

TEST_CASE("levy distance is a metric") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = esd(random_values(rng, 1 + rng() % 6));
    const auto b = esd(random_values(rng, 1 + rng() % 6));
    const auto c = esd(random_values(rng, 1 + rng() % 6));
    const double ab = levy_distance(a, b).distance;
    REQUIRE(ab == doctest::Approx(levy_distance(b, a).distance).epsilon(1e-8));
    REQUIRE(levy_distance(a, c).distance <= ab + levy_distance(b, c).distance + 3e-9);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= 1.0);
  }
  CHECK(levy_distance(esd({0.1, 0.2}), esd({0.1, 0.2 + 1e-6})).distance > 0.0);
}

TEST_CASE("trace bound and the cubed levy inequality") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd b = a;
  CHECK(trace_bound(a, b) == 0.0);
  b(1, 2) = b(2, 1) = 0.3;
  CHECK(trace_bound(a, b) == doctest::Approx(2 * 0.09 / 4));
  CHECK_THROWS_AS(trace_bound(a, Eigen::MatrixXd::Zero(3, 3)), ArgumentError);

  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const double scale = trial % 2 ? 0.05 : 0.5;
    const Eigen::MatrixXd x = oracle::random_symmetric(n, rng, scale);
    const Eigen::MatrixXd y = oracle::random_symmetric(n, rng, scale);
    const double cube = levy_distance(esd(symmetric_eigenvalues(x)), esd(symmetric_eigenvalues(y))).cube;
    REQUIRE(cube <= trace_bound(x, y) + 1e-12);
  }
}

TEST_CASE("lemma 2 threshold") {
  CHECK(lemma2_threshold(16, 16, 0.1) == doctest::Approx(128.0 / 259.21).epsilon(1e-14));
  CHECK(lemma2_threshold(16, 16, 0.1) == doctest::Approx(0.493809).epsilon(1e-6));
  CHECK(lemma2_threshold(16, 16, 1e12) < 1e-20);
  CHECK(lemma2_threshold(5, 20, 0.0) == doctest::Approx(8.0 / 5));
  CHECK_THROWS_AS(lemma2_threshold(0, 1, 0.1), ArgumentError);
}

TEST_CASE("convergence study") {
  ConvergenceConfig config;
  config.d = 1;
  config.gamma = 16;
  config.alpha = 0.1;
  config.n_list = {256, 64};
  config.seeds = {3, 1, 2};
  const auto rows = convergence_study(config);
  REQUIRE(rows.size() == 6);
  CHECK(rows.front().n == 64);
  CHECK(rows.front().seed == 1);
  CHECK(rows.back().n == 256);
  CHECK(rows.back().seed == 3);
  for (const auto& r : rows) {
    CHECK(r.levy_cubed >= 0.0);
    CHECK(r.levy_cubed <= 1.0);
    CHECK(r.levy_cubed == doctest::Approx(r.levy * r.levy * r.levy));
    CHECK(r.gamma_prime == 32);
    CHECK(r.threshold == doctest::Approx(lemma2_threshold(16, 32, 0.1)));
  }
  std::ostringstream csv;
  write_convergence_csv(csv, rows);
  CHECK(csv.str().rfind("n,seed,gamma,gamma_prime,alpha,levy,levy_cubed,threshold,exceeds\n", 0) == 0);

  config.d = 2;
  config.n_list = {50};
  CHECK_THROWS_AS(convergence_study(config), ArgumentError);
}
