#pragma once

#include "rgg_spectra/laplacian.hpp"
#include "rgg_spectra/torus_geometry.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace rgg {

/// Multiset of eigenvalues, kept sorted ascending.
class SpectralDistribution {
 public:
  explicit SpectralDistribution(std::vector<double> eigenvalues);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  /// F(x) = #{lambda_i < x} / n (left-continuous).
  double cdf(double x) const noexcept;
  /// F(x+) = #{lambda_i <= x} / n.
  double cdf_right(double x) const noexcept;

 private:
  std::vector<double> values_;
};

/// All eigenvalues of a symmetric matrix (LAPACK dsyev, values only).
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// Throws CapacityError above kDenseSolveCap.
SpectralDistribution full_spectrum(const RegNormLaplacian& laplacian);

struct LevyResult {
  double distance = 0.0;
  double cube = 0.0;
  std::optional<double> bound;      ///< (1/n) tr (A-B)^2, when the matrices are known
  std::optional<double> threshold;  ///< the limiting error level for the RGG/DGG pair
};

inline constexpr double kLevyTolerance = 1e-9;

/// Whether F_A(x-eps) - eps <= F_B(x) <= F_A(x+eps) + eps holds for all x.
/// Checked at every breakpoint of the step functions, at the point and just right of it.
bool levy_feasible(const SpectralDistribution& fa, const SpectralDistribution& fb, double eps);

/// Levy distance by bisection on [0, 1] to kLevyTolerance.
LevyResult levy_distance(const SpectralDistribution& fa, const SpectralDistribution& fb);

/// (1/n) sum_ij (A_ij - B_ij)^2, an upper bound on the cubed Levy distance of the spectra.
double trace_bound(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double trace_bound(const RegNormLaplacian& a, const RegNormLaplacian& b);

/// max[4 gamma' / (gamma' + alpha)^2, 8 gamma / (gamma + alpha)^2]
double lemma2_threshold(double gamma, double gamma_prime, double alpha);

struct ConvergenceConfig {
  std::size_t d = 1;
  double gamma = 16.0;
  double alpha = kDefaultAlpha;
  Metric metric = Metric::infinity();
  std::vector<std::size_t> n_list;
  std::vector<std::uint64_t> seeds;
};

struct ConvergenceRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  std::size_t gamma_prime = 0;
  double alpha = 0.0;
  double levy = 0.0;
  double levy_cubed = 0.0;
  double threshold = 0.0;
  bool exceeds = false;
};

// For each n: the grid graph at the same connection radius r_n as the random
// graph, built and eigensolved once. For each (n, seed): an independent
// random graph on sample_uniform_points(n, d, substream(seed, n)), its Levy
// distance to the grid spectrum, and the threshold computed with
// gamma' = dgg_degree(gamma, d). Rows are ordered by (n, seed).
std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& config);

/// Header: n,seed,gamma,gamma_prime,alpha,levy,levy_cubed,threshold,exceeds
void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);

}  // namespace rgg
