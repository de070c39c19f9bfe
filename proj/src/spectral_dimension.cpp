#include "rgg_spectra/spectral_dimension.hpp"

#include "rgg_spectra/analytic_spectrum.hpp"
#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/parallel.hpp"
#include "rgg_spectra/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace rgg {

std::string to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::CdfSlope:
      return "cdf_slope";
    case EstimateMethod::HeatTrace:
      return "heat_trace";
    case EstimateMethod::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("fit_line: x and y differ in length");
  if (x.size() < 2) throw EstimationError("fit_line: need at least 2 points, got " + std::to_string(x.size()));
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw EstimationError("fit_line: all x values coincide");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

double theoretical_cdf(double x, std::size_t gamma_prime, double alpha, std::size_t d) {
  if (x <= 0.0) return 0.0;
  const double half_d = static_cast<double>(d) / 2.0;
  const double g = static_cast<double>(gamma_prime);
  return std::pow(6.0, half_d) * std::pow(g + alpha, half_d) * std::pow(std::numbers::pi, -static_cast<double>(d)) *
         std::pow(1.0 + g, -(2.0 + static_cast<double>(d)) / 2.0) * std::pow(x, half_d);
}

double theoretical_ds(std::size_t d) {
  if (d == 0) throw ArgumentError("theoretical_ds: d must be >= 1");
  return static_cast<double>(d);
}

SpectralDistribution remove_spectral_gap(const SpectralDistribution& spec, double gap) {
  std::vector<double> shifted = spec.eigenvalues();
  for (double& v : shifted) {
    if (v > kZeroEigenvalueTolerance) v -= gap;
  }
  return SpectralDistribution(std::move(shifted));
}

SpecDimEstimate estimate_ds_from_spectrum(const SpectralDistribution& spec, const CdfFitOptions& options) {
  const auto& values = spec.eigenvalues();
  const std::size_t n = values.size();
  const auto first_nonzero =
      std::upper_bound(values.begin(), values.end(), options.zero_tolerance) - values.begin();
  const auto zero_count = static_cast<std::size_t>(first_nonzero);
  const std::size_t nonzero = n - zero_count;
  const auto wanted = static_cast<std::size_t>(std::ceil(options.window_fraction * static_cast<double>(n)));
  const std::size_t take = std::min(wanted, nonzero);
  if (take < options.min_points || take < 2) {
    throw EstimationError("estimate_ds_from_spectrum: only " + std::to_string(take) +
                          " non-zero eigenvalues in the window, need " + std::to_string(options.min_points));
  }

  std::vector<double> log_lambda;
  std::vector<double> log_cdf;
  log_lambda.reserve(take);
  log_cdf.reserve(take);
  for (std::size_t k = 0; k < take; ++k) {
    const double lambda = values[zero_count + k];
    const double tie_edge = lambda * (1.0 + options.tie_tolerance);
    const auto at_or_below = static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), tie_edge) - values.begin());
    const double cdf = static_cast<double>(at_or_below - zero_count) / static_cast<double>(n);
    log_lambda.push_back(std::log(lambda));
    log_cdf.push_back(std::log(cdf));
  }
  const LinearFit fit = fit_line(log_lambda, log_cdf);
  SpecDimEstimate est;
  est.method = EstimateMethod::CdfSlope;
  est.slope = fit.slope;
  est.d_s = 2.0 * fit.slope;
  est.window_lo = values[zero_count];
  est.window_hi = values[zero_count + take - 1];
  est.r_squared = fit.r_squared;
  est.n_points = take;
  return est;
}

std::vector<double> log_time_grid(double t_min, double t_max, std::size_t count_per_decade) {
  if (!(t_min > 0.0 && t_max > t_min) || count_per_decade == 0) throw ArgumentError("log_time_grid: bad range");
  const double decades = std::log10(t_max / t_min);
  const auto steps = static_cast<std::size_t>(std::llround(decades * static_cast<double>(count_per_decade)));
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    times[k] = t_min * std::pow(10.0, decades * static_cast<double>(k) / static_cast<double>(steps));
  }
  times.back() = t_max;
  return times;
}

std::vector<double> default_heat_times() { return log_time_grid(1e-2, 1e7, 40); }

HeatTrace heat_trace(const SpectralDistribution& spec, std::span<const double> times) {
  const auto& values = spec.eigenvalues();
  const auto n = static_cast<double>(values.size());
  const auto zero_end = std::upper_bound(values.begin(), values.end(), kZeroEigenvalueTolerance) - values.begin();
  HeatTrace ht;
  ht.times.assign(times.begin(), times.end());
  ht.values.resize(times.size());
  ht.excess.resize(times.size());
  ht.stationary_offset = static_cast<double>(zero_end) / n;
  parallel_for(times.size(), [&](std::size_t k) {
    const double t = times[k];
    double zero_part = 0.0;
    double rest = 0.0;
    for (std::ptrdiff_t i = 0; i < zero_end; ++i) zero_part += std::exp(-values[static_cast<std::size_t>(i)] * t);
    for (std::size_t i = static_cast<std::size_t>(zero_end); i < values.size(); ++i) rest += std::exp(-values[i] * t);
    ht.values[k] = (zero_part + rest) / n;
    ht.excess[k] = rest / n;
  });
  return ht;
}

TimeWindow default_heat_window(const HeatTrace& ht) {
  TimeWindow window{kHeatWindowStart, kHeatWindowStart};
  for (std::size_t k = 0; k < ht.times.size(); ++k) {
    if (ht.excess[k] < kHeatWindowFloor) break;
    window.hi = ht.times[k];
  }
  return window;
}

SpecDimEstimate estimate_ds_from_heat_trace(const HeatTrace& ht, TimeWindow window, double min_r_squared) {
  constexpr double kSignalFloor = 1e3 * std::numeric_limits<double>::epsilon();
  std::vector<double> log_t;
  std::vector<double> log_p;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < ht.times.size(); ++k) {
    const double t = ht.times[k];
    if (t < window.lo || t > window.hi) continue;
    if (!(ht.excess[k] > kSignalFloor)) {
      throw EstimationError("estimate_ds_from_heat_trace: P0 - offset underflows at t = " + fmt17(t));
    }
    log_t.push_back(std::log(t));
    log_p.push_back(std::log(ht.excess[k]));
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (log_t.size() < 3) {
    throw EstimationError("estimate_ds_from_heat_trace: window [" + fmt17(window.lo) + ", " + fmt17(window.hi) +
                          "] holds " + std::to_string(log_t.size()) + " grid points, need 3");
  }
  const LinearFit fit = fit_line(log_t, log_p);
  if (fit.r_squared < min_r_squared) {
    throw EstimationError("estimate_ds_from_heat_trace: r^2 = " + fmt17(fit.r_squared) + " below the gate " +
                          fmt17(min_r_squared) + "; the trace is not a power law in this window");
  }
  SpecDimEstimate est;
  est.method = EstimateMethod::HeatTrace;
  est.slope = fit.slope;
  est.d_s = -2.0 * fit.slope;
  est.window_lo = lo;
  est.window_hi = hi;
  est.r_squared = fit.r_squared;
  est.n_points = log_t.size();
  return est;
}

std::vector<ReturnSample> mc_return_probability(const GeometricGraph& g, std::size_t t_max, std::size_t walkers,
                                                std::uint64_t seed) {
  if (walkers == 0) throw ArgumentError("mc_return_probability: need at least one walker");
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (g.degree(i) == 0) throw ArgumentError("mc_return_probability: node " + std::to_string(i) + " has no neighbours");
  }

  // Fixed chunking so the integer tallies never depend on the worker count.
  constexpr std::size_t kChunks = 64;
  const std::size_t chunks = std::min(kChunks, walkers);
  std::vector<std::vector<std::uint64_t>> tallies(chunks, std::vector<std::uint64_t>(t_max + 1, 0));
  parallel_for(chunks, [&](std::size_t c) {
    auto& tally = tallies[c];
    for (std::size_t w = walkers * c / chunks; w < walkers * (c + 1) / chunks; ++w) {
      Rng rng(seed, w);
      const auto start = static_cast<std::size_t>(rng.below(n));
      std::size_t position = start;
      ++tally[0];
      for (std::size_t t = 1; t <= t_max; ++t) {
        const auto next = g.neighbors(position);
        position = next[static_cast<std::size_t>(rng.below(next.size()))];
        if (position == start) ++tally[t];
      }
    }
  });

  std::vector<ReturnSample> out(t_max + 1);
  const auto total = static_cast<double>(walkers);
  for (std::size_t t = 0; t <= t_max; ++t) {
    std::uint64_t count = 0;
    for (const auto& tally : tallies) count += tally[t];
    const double f = static_cast<double>(count) / total;
    out[t] = {t, f, std::sqrt(f * (1.0 - f) / total)};
  }
  return out;
}

double spectral_return_probability(std::span<const double> transition_eigenvalues, std::size_t t) {
  if (transition_eigenvalues.empty()) throw ArgumentError("spectral_return_probability: empty spectrum");
  double sum = 0.0;
  for (double nu : transition_eigenvalues) sum += std::pow(nu, static_cast<double>(t));
  return sum / static_cast<double>(transition_eigenvalues.size());
}

std::vector<double> grid_transition_eigenvalues(std::size_t side, std::size_t d, std::size_t gamma_prime) {
  std::vector<double> nu = analytic_dgg_spectrum(side, d, gamma_prime, 0.0).eigenvalues();
  for (double& v : nu) v = 1.0 - v;
  return nu;
}

StepWindow default_return_window(std::span<const ReturnSample> samples, std::size_t n) {
  constexpr std::size_t kFirstStep = 4;
  const double floor = 1.0 / static_cast<double>(n);
  StepWindow window{kFirstStep, kFirstStep};
  for (std::size_t t = kFirstStep; t < samples.size(); ++t) {
    const double excess = samples[t].return_freq - floor;
    if (!(excess > 5.0 * samples[t].stderr_)) break;
    window.hi = t;
  }
  return window;
}

SpecDimEstimate estimate_ds_from_return_probability(std::span<const ReturnSample> samples, std::size_t n,
                                                    StepWindow window) {
  const double floor = 1.0 / static_cast<double>(n);
  std::vector<double> log_t;
  std::vector<double> log_p;
  for (const auto& s : samples) {
    if (s.t < std::max<std::size_t>(1, window.lo) || s.t > window.hi) continue;
    const double excess = s.return_freq - floor;
    if (!(excess > 0.0)) {
      throw EstimationError("estimate_ds_from_return_probability: no signal above 1/n at t = " + std::to_string(s.t));
    }
    log_t.push_back(std::log(static_cast<double>(s.t)));
    log_p.push_back(std::log(excess));
  }
  if (log_t.size() < 3) {
    throw EstimationError("estimate_ds_from_return_probability: window holds " + std::to_string(log_t.size()) +
                          " steps, need 3");
  }
  const LinearFit fit = fit_line(log_t, log_p);
  SpecDimEstimate est;
  est.method = EstimateMethod::MonteCarlo;
  est.slope = fit.slope;
  est.d_s = -2.0 * fit.slope;
  est.window_lo = static_cast<double>(window.lo);
  est.window_hi = static_cast<double>(window.hi);
  est.r_squared = fit.r_squared;
  est.n_points = log_t.size();
  return est;
}

void write_heat_trace_csv(std::ostream& out, const HeatTrace& ht) {
  out << "t,p0,p0_minus_offset\n";
  for (std::size_t k = 0; k < ht.times.size(); ++k) {
    out << fmt17(ht.times[k]) << ',' << fmt17(ht.values[k]) << ',' << fmt17(ht.excess[k]) << '\n';
  }
}

void write_return_csv(std::ostream& out, std::span<const ReturnSample> samples) {
  out << "t,return_freq,stderr\n";
  for (const auto& s : samples) out << s.t << ',' << fmt17(s.return_freq) << ',' << fmt17(s.stderr_) << '\n';
}

void write_estimates_csv(std::ostream& out, std::span<const SpecDimEstimate> estimates) {
  out << "method,d_s,slope,window_lo,window_hi,r_squared,n_points\n";
  for (const auto& e : estimates) {
    out << to_string(e.method) << ',' << fmt17(e.d_s) << ',' << fmt17(e.slope) << ',' << fmt17(e.window_lo) << ','
        << fmt17(e.window_hi) << ',' << fmt17(e.r_squared) << ',' << e.n_points << '\n';
  }
}

}  // namespace rgg
