#pragma once

#include "rgg_spectra/graph_build.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace rgg {

/// Largest order we are willing to store densely and eigensolve.
inline constexpr std::size_t kDenseSolveCap = 8192;

inline constexpr double kDefaultAlpha = 0.1;

// Regularized normalized Laplacian
//
//   L_ij = delta_ij - (chi[i~j] + alpha/n) / sqrt((N_i + alpha)(N_j + alpha))
//
// i.e. the normalized Laplacian of the graph with an extra weight-alpha/n edge
// between every ordered pair of nodes, including i = j. With the diagonal term
// included, the DGG spectrum is given exactly by the closed form in
// analytic_spectrum.hpp.
class RegNormLaplacian {
 public:
  RegNormLaplacian(Eigen::MatrixXd entries, double alpha, GraphKind source_kind, std::vector<std::size_t> degrees);

  std::size_t order() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double alpha() const noexcept { return alpha_; }
  GraphKind source_kind() const noexcept { return source_kind_; }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

 private:
  Eigen::MatrixXd entries_;
  double alpha_;
  GraphKind source_kind_;
  std::vector<std::size_t> degrees_;
};

/// Throws SingularityError for alpha = 0 with an isolated vertex, and
/// CapacityError above kDenseSolveCap.
RegNormLaplacian assemble_rgg_laplacian(const GeometricGraph& g, double alpha);

/// Requires a regular graph (ArgumentError otherwise); every denominator equals gamma' + alpha.
RegNormLaplacian assemble_dgg_laplacian(const GeometricGraph& g, double alpha);

/// Plain text, one row per line, space-separated entries at 17 significant digits.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in);

}  // namespace rgg
