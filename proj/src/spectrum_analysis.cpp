#include "rgg_spectra/spectrum_analysis.hpp"

#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/graph_build.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/parallel.hpp"
#include "rgg_spectra/rng.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>

extern "C" void openblas_set_num_threads(int num_threads);

namespace rgg {

SpectralDistribution::SpectralDistribution(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
  if (values_.empty()) throw ArgumentError("spectral distribution needs at least one eigenvalue");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite eigenvalue");
  }
  std::sort(values_.begin(), values_.end());
}

double SpectralDistribution::cdf(double x) const noexcept {
  const auto count = std::lower_bound(values_.begin(), values_.end(), x) - values_.begin();
  return static_cast<double>(count) / static_cast<double>(values_.size());
}

double SpectralDistribution::cdf_right(double x) const noexcept {
  const auto count = std::upper_bound(values_.begin(), values_.end(), x) - values_.begin();
  return static_cast<double>(count) / static_cast<double>(values_.size());
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ArgumentError("symmetric_eigenvalues: matrix is not square");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  // Numerical results must not depend on the worker budget, so BLAS stays
  // single-threaded; callers parallelise across independent solves instead.
  static std::once_flag blas_threads;
  std::call_once(blas_threads, [] { openblas_set_num_threads(1); });

  std::vector<double> work(m.data(), m.data() + m.size());
  std::vector<double> values(static_cast<std::size_t>(n));
  // two-stage tridiagonal reduction: mostly level-3 work, eigenvalues only
  const lapack_int info = LAPACKE_dsyev_2stage(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data());
  if (info != 0) throw Error("LAPACK dsyev_2stage failed with info = " + std::to_string(info));
  return values;
}

SpectralDistribution full_spectrum(const RegNormLaplacian& laplacian) {
  if (laplacian.order() > kDenseSolveCap) {
    throw CapacityError("full_spectrum: order " + std::to_string(laplacian.order()) + " exceeds the cap of " +
                        std::to_string(kDenseSolveCap));
  }
  return SpectralDistribution(symmetric_eigenvalues(laplacian.entries()));
}

namespace {

// Largest violation of both Levy inequalities over the candidate points. The
// step functions are piecewise constant between breakpoints, so checking each
// breakpoint c at c itself (left-continuous value) and at c+ (right limit)
// covers every piece.
struct StepCounter {
  const std::vector<double>& v;
  double left(double x) const {
    return static_cast<double>(std::lower_bound(v.begin(), v.end(), x) - v.begin()) / static_cast<double>(v.size());
  }
  double right(double x) const {
    return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) / static_cast<double>(v.size());
  }
};

}  // namespace

bool levy_feasible(const SpectralDistribution& fa, const SpectralDistribution& fb, double eps) {
  const StepCounter a{fa.eigenvalues()};
  const StepCounter b{fb.eigenvalues()};

  // Lower inequality: F_A(x - eps) - F_B(x) <= eps, breakpoints b_j and a_i + eps.
  auto lower_ok = [&](double x) {
    return a.left(x - eps) - b.left(x) <= eps && a.right(x - eps) - b.right(x) <= eps;
  };
  // Upper inequality: F_B(x) - F_A(x + eps) <= eps, breakpoints b_j and a_i - eps.
  auto upper_ok = [&](double x) {
    return b.left(x) - a.left(x + eps) <= eps && b.right(x) - a.right(x + eps) <= eps;
  };
  for (double x : fb.eigenvalues()) {
    if (!lower_ok(x) || !upper_ok(x)) return false;
  }
  for (double x : fa.eigenvalues()) {
    if (!lower_ok(x + eps) || !upper_ok(x - eps)) return false;
  }
  return true;
}

LevyResult levy_distance(const SpectralDistribution& fa, const SpectralDistribution& fb) {
  LevyResult result;
  if (levy_feasible(fa, fb, 0.0)) return result;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kLevyTolerance) {
    const double mid = 0.5 * (lo + hi);
    (levy_feasible(fa, fb, mid) ? hi : lo) = mid;
  }
  result.distance = hi;
  result.cube = hi * hi * hi;
  return result;
}

double trace_bound(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw ArgumentError("trace_bound: matrices must be square and of the same order");
  }
  if (a.rows() == 0) return 0.0;
  return (a - b).squaredNorm() / static_cast<double>(a.rows());
}

double trace_bound(const RegNormLaplacian& a, const RegNormLaplacian& b) { return trace_bound(a.entries(), b.entries()); }

double lemma2_threshold(double gamma, double gamma_prime, double alpha) {
  if (!(gamma > 0.0 && gamma_prime > 0.0)) throw ArgumentError("lemma2_threshold: gamma and gamma' must be positive");
  const double grid_term = 4.0 * gamma_prime / ((gamma_prime + alpha) * (gamma_prime + alpha));
  const double random_term = 8.0 * gamma / ((gamma + alpha) * (gamma + alpha));
  return std::max(grid_term, random_term);
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& config) {
  if (config.n_list.empty()) throw ArgumentError("convergence_study: n_list is empty");
  if (config.seeds.empty()) throw ArgumentError("convergence_study: no seeds");
  const std::size_t gamma_prime = dgg_degree(config.gamma, config.d);
  const double threshold = lemma2_threshold(config.gamma, static_cast<double>(gamma_prime), config.alpha);

  std::vector<std::size_t> n_sorted = config.n_list;
  std::sort(n_sorted.begin(), n_sorted.end());
  std::vector<std::uint64_t> seeds_sorted = config.seeds;
  std::sort(seeds_sorted.begin(), seeds_sorted.end());

  std::vector<ConvergenceRow> rows;
  for (std::size_t n : n_sorted) {
    if (!exact_root(n, config.d)) {
      throw ArgumentError("convergence_study: n = " + std::to_string(n) + " is not a perfect " +
                          std::to_string(config.d) + "-th power");
    }
    const double radius = radius_for_gamma(config.gamma, n, config.d, config.metric);
    const GeometricGraph grid = build_dgg(n, config.d, radius, config.metric);
    const SpectralDistribution grid_spectrum = full_spectrum(assemble_dgg_laplacian(grid, config.alpha));

    std::vector<ConvergenceRow> block(seeds_sorted.size());
    parallel_for(seeds_sorted.size(), [&](std::size_t k) {
      const std::uint64_t seed = seeds_sorted[k];
      const TorusPointSet points = sample_uniform_points(n, config.d, substream_seed(seed, n));
      const GeometricGraph random_graph = build_rgg(points, radius, config.metric);
      const SpectralDistribution random_spectrum = full_spectrum(assemble_rgg_laplacian(random_graph, config.alpha));
      const LevyResult levy = levy_distance(random_spectrum, grid_spectrum);
      block[k] = {n, seed, config.gamma, gamma_prime, config.alpha, levy.distance, levy.cube, threshold,
                  levy.cube > threshold};
    });
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
  out << "n,seed,gamma,gamma_prime,alpha,levy,levy_cubed,threshold,exceeds\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.seed << ',' << fmt17(r.gamma) << ',' << r.gamma_prime << ',' << fmt17(r.alpha) << ','
        << fmt17(r.levy) << ',' << fmt17(r.levy_cubed) << ',' << fmt17(r.threshold) << ','
        << (r.exceeds ? 1 : 0) << '\n';
  }
}

}  // namespace rgg
