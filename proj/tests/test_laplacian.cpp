#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/graph_build.hpp"
#include "rgg_spectra/laplacian.hpp"

#include <cmath>
#include <sstream>

using namespace rgg;

namespace {
GeometricGraph pair_graph(bool connected) {
  std::vector<std::vector<NodeId>> adj(2);
  if (connected) adj = {{1}, {0}};
  return GeometricGraph(GraphKind::RGG, 1, Metric::infinity(), 0.2, adj);
}
}  // namespace

TEST_CASE("hand examples") {
  const auto isolated = assemble_rgg_laplacian(pair_graph(false), 1.0);
  CHECK(isolated(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(isolated(0, 0) == doctest::Approx(0.5).epsilon(1e-15));

  const auto k2 = assemble_rgg_laplacian(pair_graph(true), 0.0);
  CHECK(k2(0, 0) == doctest::Approx(1.0));
  CHECK(k2(0, 1) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(assemble_rgg_laplacian(pair_graph(false), 0.0), SingularityError);

  const auto ring = build_dgg(8, 1, 0.3, Metric::infinity());
  const auto l0 = assemble_dgg_laplacian(ring, 0.0);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      if (i != j && l0(i, j) != 0.0) REQUIRE(l0(i, j) == doctest::Approx(-0.25).epsilon(1e-15));
    }
  }
  const auto l5 = assemble_dgg_laplacian(ring, 0.5);
  CHECK(l5(3, 3) == doctest::Approx(1.0 - (0.5 / 8) / 4.5).epsilon(1e-15));
  CHECK(l5(3, 3) == doctest::Approx(0.986111).epsilon(1e-6));

  const auto irregular = build_rgg(sample_uniform_points(40, 1, 3), 0.05, Metric::infinity());
  REQUIRE_FALSE(irregular.regular_degree().has_value());
  CHECK_THROWS_AS(assemble_dgg_laplacian(irregular, 0.1), ArgumentError);
}

TEST_CASE("row identity and symmetry on random graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = build_rgg(sample_uniform_points(200, 2, seed), 0.06, Metric::euclidean());
    for (double alpha : {0.1, 1.0, 3.0}) {
      const auto l = assemble_rgg_laplacian(g, alpha);
      const auto& m = l.entries();
      CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
      // sum_j (chi_ij + alpha/n) = N_i + alpha, read back from I - L
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double wi = std::sqrt(static_cast<double>(g.degree(i)) + alpha);
        double sum = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
          const double wj = std::sqrt(static_cast<double>(g.degree(j)) + alpha);
          sum += ((i == j ? 1.0 : 0.0) - m(i, j)) * wi * wj;
        }
        REQUIRE(sum == doctest::Approx(static_cast<double>(g.degree(i)) + alpha).epsilon(1e-12));
      }
      const auto ev = oracle::eigenvalues(m);
      CHECK(ev.front() >= -1e-10);
      CHECK(ev.back() <= 2.0 + 1e-10);
    }
  }
}

TEST_CASE("grid Laplacian null vector") {
  for (auto [gamma, side, d] : {std::tuple{2.0, 16ul, 1ul}, {1.0, 6ul, 2ul}, {4.0, 9ul, 2ul}}) {
    const auto g = build_dgg_for_gamma(gamma, side, d);
    for (double alpha : {0.0, 0.1, 1.0}) {
      const auto l = assemble_dgg_laplacian(g, alpha);
      const auto n = static_cast<Eigen::Index>(g.size());
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
      CHECK((l.entries() * ones).norm() <= 1e-12);
      CHECK(l.entries().rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("capacity cap") {
  const auto g = build_dgg_for_gamma(1, 91, 2);  // 8281 nodes
  CHECK_THROWS_AS(assemble_dgg_laplacian(g, 0.1), CapacityError);
}

TEST_CASE("matrix dump round trip") {
  const auto l = assemble_dgg_laplacian(build_dgg_for_gamma(1, 4, 2), 0.1);
  std::stringstream ss;
  write_matrix(ss, l.entries());
  const Eigen::MatrixXd back = read_matrix(ss);
  CHECK(back == l.entries());
}
