#include "rgg_spectra/laplacian.hpp"

#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/numfmt.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace rgg {

RegNormLaplacian::RegNormLaplacian(Eigen::MatrixXd entries, double alpha, GraphKind source_kind,
                                   std::vector<std::size_t> degrees)
    : entries_(std::move(entries)), alpha_(alpha), source_kind_(source_kind), degrees_(std::move(degrees)) {
  if (entries_.rows() != entries_.cols()) throw ArgumentError("Laplacian must be square");
}

namespace {

void check_order(std::size_t n) {
  if (n > kDenseSolveCap) {
    throw CapacityError("dense Laplacian of order " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kDenseSolveCap) + "; use the analytic spectrum instead");
  }
}

// Shared assembly given the per-node normalisation 1/sqrt(w_i).
Eigen::MatrixXd assemble(const GeometricGraph& g, double alpha, const Eigen::VectorXd& inv_sqrt_weight) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const double background = alpha / static_cast<double>(n);
  // Fill one triangle and mirror it so symmetry is exact, whatever order the
  // products get evaluated in.
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) m(i, j) = -background * (inv_sqrt_weight(i) * inv_sqrt_weight(j));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(static_cast<std::size_t>(i))) {
      if (static_cast<Eigen::Index>(j) < i) m(i, j) -= inv_sqrt_weight(i) * inv_sqrt_weight(j);
    }
    m(i, i) += 1.0;
  }
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  return m;
}

}  // namespace

RegNormLaplacian assemble_rgg_laplacian(const GeometricGraph& g, double alpha) {
  if (!(alpha >= 0.0)) throw ArgumentError("alpha must be nonnegative");
  check_order(g.size());
  if (alpha == 0.0 && g.has_isolated_vertex()) {
    throw SingularityError("alpha = 0 with an isolated vertex makes the normalized Laplacian singular");
  }
  Eigen::VectorXd s(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) s(static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(static_cast<double>(g.degree(i)) + alpha);
  return RegNormLaplacian(assemble(g, alpha, s), alpha, g.kind(), g.degrees());
}

RegNormLaplacian assemble_dgg_laplacian(const GeometricGraph& g, double alpha) {
  if (!(alpha >= 0.0)) throw ArgumentError("alpha must be nonnegative");
  check_order(g.size());
  const auto degree = g.regular_degree();
  if (!degree) throw ArgumentError("assemble_dgg_laplacian: graph is not regular");
  if (alpha == 0.0 && *degree == 0) {
    throw SingularityError("alpha = 0 on an edgeless grid graph makes the normalized Laplacian singular");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(*degree) + alpha);
  const Eigen::VectorXd s = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.size()), scale);
  return RegNormLaplacian(assemble(g, alpha, s), alpha, g.kind(), g.degrees());
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt17(m(i, j));
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::vector<double> values;
    std::string cell;
    while (row >> cell) values.push_back(parse_double(cell));
    if (!rows.empty() && values.size() != rows.front().size()) throw ArgumentError("matrix rows differ in length");
    rows.push_back(std::move(values));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace rgg
