#pragma once

#include "rgg_spectra/spectrum_analysis.hpp"

#include <cstddef>
#include <iterator>
#include <span>
#include <vector>

namespace rgg {

/// Fourier label (m_1, ..., m_d) of a grid-graph eigenvalue, each m_s in [0, side).
struct ModeIndex {
  std::vector<std::size_t> m;
  std::size_t side = 0;

  ModeIndex(std::vector<std::size_t> components, std::size_t grid_side);
  bool is_zero() const noexcept;
};

/// Continuum label (w_1, ..., w_d) in [0,1]^d, with w_s = m_s^d / n.
struct ContinuumMode {
  std::vector<double> w;

  explicit ContinuumMode(std::vector<double> components);
  static ContinuumMode from_mode(const ModeIndex& mode);
  bool is_zero() const noexcept;
};

/// Odd side length (gamma'+1)^{1/d} of the l_inf neighbourhood cube; throws
/// ArgumentError unless it is an odd integer.
std::size_t neighbourhood_width(std::size_t gamma_prime, std::size_t d);

/// sin(width x) / sin(x) for odd width, evaluated as the Dirichlet sum
/// 1 + 2 sum_{j=1}^{(width-1)/2} cos(2 j x). Equals width at x = 0 (and at x = pi).
double dirichlet_ratio(double x, std::size_t width);

/// Closed-form eigenvalue of the grid Laplacian at one mode:
///   1 - prod_s S(m_s) / (gamma'+alpha) + (1 - alpha [m = 0]) / (gamma'+alpha),
/// S(m) = sin(m pi (gamma'+1)^{1/d} / N) / sin(m pi / N).
double dgg_eigenvalue(const ModeIndex& mode, std::size_t gamma_prime, double alpha);

/// Visits all side^d modes in row-major order without storing them.
class ModeLattice {
 public:
  ModeLattice(std::size_t side, std::size_t d);

  class iterator {
   public:
    using value_type = ModeIndex;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator(std::size_t side, std::size_t d, std::size_t linear);
    const ModeIndex& operator*() const noexcept { return current_; }
    const ModeIndex* operator->() const noexcept { return &current_; }
    iterator& operator++();
    bool operator==(const iterator& other) const noexcept { return linear_ == other.linear_; }

   private:
    ModeIndex current_;
    std::size_t linear_;
  };

  iterator begin() const { return {side_, d_, 0}; }
  iterator end() const { return {side_, d_, size_}; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t side_;
  std::size_t d_;
  std::size_t size_;
};

/// All side^d closed-form eigenvalues as a distribution (no matrix is formed).
SpectralDistribution analytic_dgg_spectrum(std::size_t side, std::size_t d, std::size_t gamma_prime, double alpha);

/// Continuum (n -> infinity) eigenvalue at w, same conventions as dgg_eigenvalue
/// with the per-axis argument pi w_s^{1/d}.
double limit_eigenvalue(const ContinuumMode& mode, std::size_t gamma_prime, double alpha);

/// Continuum eigenvalue along the diagonal w_1 = ... = w_d = w.
double limit_eigenvalue_diagonal(double w, std::size_t gamma_prime, double alpha, std::size_t d);
/// Continuum eigenvalue along one axis, mode (w, 0, ..., 0).
double limit_eigenvalue_axis(double w, std::size_t gamma_prime, double alpha, std::size_t d);

/// Second-order small-w form pi^2 / (6 (gamma'+alpha)) w^{2/d} (gamma'+1)^{(d+2)/d}.
double taylor_lambda(double w, std::size_t gamma_prime, double alpha, std::size_t d);

/// Second-smallest eigenvalue, attained at mode (1, 0, ..., 0):
///   1/(gamma'+alpha) + 1 - (1+gamma')^{(d-1)/d} sin(pi (gamma'+1)^{1/d}/N) / ((gamma'+alpha) sin(pi/N)).
double fiedler_eigenvalue(std::size_t side, std::size_t gamma_prime, double alpha, std::size_t d);

/// alpha / (gamma'+alpha): lower edge of the non-zero grid spectrum, and the
/// N -> infinity limit of fiedler_eigenvalue. The alpha/n background edge
/// shifts every non-constant mode up by this amount.
double regularization_gap(std::size_t gamma_prime, double alpha);

}  // namespace rgg
