#include "rgg_spectra/analytic_spectrum.hpp"

#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/graph_build.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rgg {

ModeIndex::ModeIndex(std::vector<std::size_t> components, std::size_t grid_side)
    : m(std::move(components)), side(grid_side) {
  if (m.empty()) throw ArgumentError("mode index needs at least one component");
  for (std::size_t c : m) {
    if (c >= side) throw ArgumentError("mode component " + std::to_string(c) + " outside [0, " + std::to_string(side) + ")");
  }
}

bool ModeIndex::is_zero() const noexcept {
  return std::all_of(m.begin(), m.end(), [](std::size_t c) { return c == 0; });
}

ContinuumMode::ContinuumMode(std::vector<double> components) : w(std::move(components)) {
  if (w.empty()) throw ArgumentError("continuum mode needs at least one component");
  for (double c : w) {
    if (!(c >= 0.0 && c <= 1.0)) throw ArgumentError("continuum mode component outside [0, 1]");
  }
}

ContinuumMode ContinuumMode::from_mode(const ModeIndex& mode) {
  const double d = static_cast<double>(mode.m.size());
  const double n = std::pow(static_cast<double>(mode.side), d);
  std::vector<double> w(mode.m.size());
  for (std::size_t s = 0; s < w.size(); ++s) w[s] = std::pow(static_cast<double>(mode.m[s]), d) / n;
  return ContinuumMode(std::move(w));
}

bool ContinuumMode::is_zero() const noexcept {
  return std::all_of(w.begin(), w.end(), [](double c) { return c == 0.0; });
}

std::size_t neighbourhood_width(std::size_t gamma_prime, std::size_t d) {
  if (d == 0) throw ArgumentError("d must be positive");
  const auto guess = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(gamma_prime + 1), 1.0 / static_cast<double>(d))));
  std::size_t power = 1;
  for (std::size_t s = 0; s < d; ++s) power *= guess;
  if (power != gamma_prime + 1 || guess % 2 == 0) {
    throw ArgumentError("(gamma'+1)^{1/d} must be an odd integer; gamma' = " + std::to_string(gamma_prime) +
                        ", d = " + std::to_string(d));
  }
  return guess;
}

double dirichlet_ratio(double x, std::size_t width) {
  double sum = 1.0;
  for (std::size_t j = 1; 2 * j < width + 1; ++j) sum += 2.0 * std::cos(2.0 * static_cast<double>(j) * x);
  return sum;
}

namespace {

void check_grid(std::size_t width, std::size_t side) {
  if (width > side) {
    throw ArgumentError("neighbourhood width " + std::to_string(width) + " exceeds the grid side " +
                        std::to_string(side) + "; the grid graph would need multi-edges");
  }
}

double eigenvalue_from_product(double product, bool zero_mode, std::size_t gamma_prime, double alpha) {
  const double denom = static_cast<double>(gamma_prime) + alpha;
  if (zero_mode) return 0.0;  // 1 - (gamma'+1)/denom + (1-alpha)/denom cancels exactly
  return 1.0 - product / denom + 1.0 / denom;
}

}  // namespace

double dgg_eigenvalue(const ModeIndex& mode, std::size_t gamma_prime, double alpha) {
  const std::size_t d = mode.m.size();
  const std::size_t width = neighbourhood_width(gamma_prime, d);
  check_grid(width, mode.side);
  double product = 1.0;
  for (std::size_t c : mode.m) {
    product *= dirichlet_ratio(std::numbers::pi * static_cast<double>(c) / static_cast<double>(mode.side), width);
  }
  return eigenvalue_from_product(product, mode.is_zero(), gamma_prime, alpha);
}

ModeLattice::ModeLattice(std::size_t side, std::size_t d) : side_(side), d_(d), size_(1) {
  if (side == 0 || d == 0) throw ArgumentError("mode lattice needs positive side and dimension");
  for (std::size_t s = 0; s < d; ++s) size_ *= side;
}

ModeLattice::iterator::iterator(std::size_t side, std::size_t d, std::size_t linear)
    : current_(std::vector<std::size_t>(d, 0), side), linear_(linear) {}

ModeLattice::iterator& ModeLattice::iterator::operator++() {
  ++linear_;
  for (std::size_t k = current_.m.size(); k-- > 0;) {
    if (++current_.m[k] < current_.side) break;
    current_.m[k] = 0;
  }
  return *this;
}

SpectralDistribution analytic_dgg_spectrum(std::size_t side, std::size_t d, std::size_t gamma_prime, double alpha) {
  const std::size_t width = neighbourhood_width(gamma_prime, d);
  check_grid(width, side);
  std::vector<double> ratio(side);
  for (std::size_t c = 0; c < side; ++c) {
    ratio[c] = dirichlet_ratio(std::numbers::pi * static_cast<double>(c) / static_cast<double>(side), width);
  }
  const ModeLattice lattice(side, d);
  std::vector<double> values;
  values.reserve(lattice.size());
  for (const ModeIndex& mode : lattice) {
    double product = 1.0;
    for (std::size_t c : mode.m) product *= ratio[c];
    values.push_back(eigenvalue_from_product(product, mode.is_zero(), gamma_prime, alpha));
  }
  return SpectralDistribution(std::move(values));
}

double limit_eigenvalue(const ContinuumMode& mode, std::size_t gamma_prime, double alpha) {
  const std::size_t d = mode.w.size();
  const std::size_t width = neighbourhood_width(gamma_prime, d);
  double product = 1.0;
  for (double w : mode.w) {
    product *= dirichlet_ratio(std::numbers::pi * std::pow(w, 1.0 / static_cast<double>(d)), width);
  }
  return eigenvalue_from_product(product, mode.is_zero(), gamma_prime, alpha);
}

double limit_eigenvalue_diagonal(double w, std::size_t gamma_prime, double alpha, std::size_t d) {
  return limit_eigenvalue(ContinuumMode(std::vector<double>(d, w)), gamma_prime, alpha);
}

double limit_eigenvalue_axis(double w, std::size_t gamma_prime, double alpha, std::size_t d) {
  std::vector<double> components(d, 0.0);
  components[0] = w;
  return limit_eigenvalue(ContinuumMode(std::move(components)), gamma_prime, alpha);
}

double taylor_lambda(double w, std::size_t gamma_prime, double alpha, std::size_t d) {
  const double dd = static_cast<double>(d);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return pi2 / (6.0 * (static_cast<double>(gamma_prime) + alpha)) * std::pow(w, 2.0 / dd) *
         std::pow(static_cast<double>(gamma_prime) + 1.0, (dd + 2.0) / dd);
}

double fiedler_eigenvalue(std::size_t side, std::size_t gamma_prime, double alpha, std::size_t d) {
  const std::size_t width = neighbourhood_width(gamma_prime, d);
  check_grid(width, side);
  if (side < 2) throw ArgumentError("fiedler_eigenvalue needs a grid side of at least 2");
  const double dd = static_cast<double>(d);
  const double denom = static_cast<double>(gamma_prime) + alpha;
  const double x = std::numbers::pi / static_cast<double>(side);
  const double ratio = std::sin(x * static_cast<double>(width)) / std::sin(x);
  return 1.0 / denom + 1.0 - std::pow(1.0 + static_cast<double>(gamma_prime), (dd - 1.0) / dd) * ratio / denom;
}

double regularization_gap(std::size_t gamma_prime, double alpha) {
  return alpha / (static_cast<double>(gamma_prime) + alpha);
}

}  // namespace rgg
