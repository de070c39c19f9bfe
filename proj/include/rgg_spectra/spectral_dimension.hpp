#pragma once

#include "rgg_spectra/graph_build.hpp"
#include "rgg_spectra/spectrum_analysis.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rgg {

enum class EstimateMethod { CdfSlope, HeatTrace, MonteCarlo };
std::string to_string(EstimateMethod method);

struct SpecDimEstimate {
  EstimateMethod method = EstimateMethod::CdfSlope;
  double d_s = 0.0;
  double slope = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

inline constexpr double kZeroEigenvalueTolerance = 1e-9;

// --- closed-form small-eigenvalue law --------------------------------------

/// 6^{d/2} (gamma'+alpha)^{d/2} pi^{-d} (1+gamma')^{-(2+d)/2} x^{d/2}: the measure
/// of modes below x under the second-order small-w eigenvalue law.
double theoretical_cdf(double x, std::size_t gamma_prime, double alpha, std::size_t d);

/// Spectral dimension predicted for the thermodynamic regime: the space dimension.
double theoretical_ds(std::size_t d);

// --- estimator (a): low-eigenvalue CDF slope -------------------------------

/// Subtracts `gap` from every eigenvalue above the zero tolerance; (near-)zero
/// eigenvalues are left alone. With gap = regularization_gap(gamma', alpha) this
/// maps a regularized grid spectrum onto gamma'/(gamma'+alpha) times the
/// unregularized one, restoring the power law at the bottom edge.
SpectralDistribution remove_spectral_gap(const SpectralDistribution& spec, double gap);

struct CdfFitOptions {
  double window_fraction = 0.02;
  std::size_t min_points = 5;
  double zero_tolerance = kZeroEigenvalueTolerance;
  /// Eigenvalues within this relative distance count as ties in the CDF.
  double tie_tolerance = 1e-12;
};

// Takes the smallest ceil(window_fraction * n) eigenvalues above the zero
// tolerance and regresses log F(lambda+) on log lambda, with
// F(lambda+) = (#{lambda_j <= lambda} - m0) / n, m0 the number of zero
// eigenvalues, so the finite-n atom at 0 does not bend the fit.
// d_s = 2 slope. EstimationError if fewer than min_points are available.
SpecDimEstimate estimate_ds_from_spectrum(const SpectralDistribution& spec, const CdfFitOptions& options = {});

// --- estimator (b): heat trace ---------------------------------------------

struct HeatTrace {
  std::vector<double> times;
  std::vector<double> values;      ///< P0(t) = (1/n) sum_i exp(-lambda_i t)
  std::vector<double> excess;      ///< P0(t) - stationary_offset, summed over non-zero modes only
  double stationary_offset = 0.0;  ///< m0 / n
};

/// `count_per_decade` log-spaced points from t_min to t_max inclusive.
std::vector<double> log_time_grid(double t_min, double t_max, std::size_t count_per_decade);

/// The grid used unless a run overrides it: 1e-2 .. 1e7, 40 points per decade.
std::vector<double> default_heat_times();

HeatTrace heat_trace(const SpectralDistribution& spec, std::span<const double> times);

struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kHeatWindowStart = 10.0;
inline constexpr double kHeatWindowFloor = 1e-3;
inline constexpr double kHeatFitMinRSquared = 0.99;

/// [kHeatWindowStart, t*] with t* the last grid time before P0 - offset drops below kHeatWindowFloor.
TimeWindow default_heat_window(const HeatTrace& ht);

/// Regresses ln(P0 - offset) on ln t inside the window; d_s = -2 slope.
/// EstimationError if the window holds < 3 grid points, the signal falls below
/// 1e3 machine epsilon, or r^2 < min_r_squared.
SpecDimEstimate estimate_ds_from_heat_trace(const HeatTrace& ht, TimeWindow window,
                                            double min_r_squared = kHeatFitMinRSquared);

// --- estimator (c): Monte Carlo return probability ---------------------------

struct ReturnSample {
  std::size_t t = 0;
  double return_freq = 0.0;
  double stderr_ = 0.0;  ///< binomial standard error of return_freq
};

// `walkers` independent discrete-time walks, walker w driven by substream
// (seed, w) and started at a uniformly random node; each step moves to a
// uniformly random neighbour. Returns, for t = 0..t_max, the fraction of
// walkers back at their start node. ArgumentError on a zero-degree node.
std::vector<ReturnSample> mc_return_probability(const GeometricGraph& g, std::size_t t_max, std::size_t walkers,
                                                std::uint64_t seed);

/// (1/n) sum_i nu_i^t: the exact mean return probability of the walk whose
/// transition matrix has eigenvalues nu_i.
double spectral_return_probability(std::span<const double> transition_eigenvalues, std::size_t t);

/// 1 - lambda_i of the unregularized closed-form grid spectrum.
std::vector<double> grid_transition_eigenvalues(std::size_t side, std::size_t d, std::size_t gamma_prime);

struct StepWindow {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

/// [4, t*] with t* the last step before freq - 1/n falls below 5 standard errors.
StepWindow default_return_window(std::span<const ReturnSample> samples, std::size_t n);

/// Regresses ln(freq - 1/n) on ln t in the window; d_s = -2 slope.
SpecDimEstimate estimate_ds_from_return_probability(std::span<const ReturnSample> samples, std::size_t n,
                                                    StepWindow window);

// --- CSV --------------------------------------------------------------------

/// t,p0,p0_minus_offset
void write_heat_trace_csv(std::ostream& out, const HeatTrace& ht);
/// t,return_freq,stderr
void write_return_csv(std::ostream& out, std::span<const ReturnSample> samples);
/// method,d_s,slope,window_lo,window_hi,r_squared,n_points
void write_estimates_csv(std::ostream& out, std::span<const SpecDimEstimate> estimates);

}  // namespace rgg
