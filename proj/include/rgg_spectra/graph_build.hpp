#pragma once

#include "rgg_spectra/torus_geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rgg {

enum class GraphKind { RGG, DGG };

std::string to_string(GraphKind kind);
GraphKind parse_graph_kind(const std::string& text);

using NodeId = std::uint32_t;

/// Undirected simple graph on torus points, with its construction parameters.
class GeometricGraph {
 public:
  /// Validates the simple-graph invariants: each list sorted, no self-loops or
  /// duplicates, and i in adj(j) iff j in adj(i).
  GeometricGraph(GraphKind kind, std::size_t dim, Metric metric, double radius,
                 std::vector<std::vector<NodeId>> adjacency, std::optional<std::uint64_t> seed = std::nullopt,
                 std::optional<RegimeParams> params = std::nullopt);

  GraphKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Metric& metric() const noexcept { return metric_; }
  double radius() const noexcept { return radius_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  const std::optional<RegimeParams>& params() const noexcept { return params_; }

  std::span<const NodeId> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  double mean_degree() const noexcept;

  /// Common degree if every node has the same degree.
  std::optional<std::size_t> regular_degree() const noexcept;
  bool has_isolated_vertex() const noexcept;

  /// Edges (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const GeometricGraph& a, const GeometricGraph& b);

 private:
  GraphKind kind_;
  std::size_t dim_;
  Metric metric_;
  double radius_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::size_t> degrees_;
  std::size_t edge_count_ = 0;
  std::optional<std::uint64_t> seed_;
  std::optional<RegimeParams> params_;
};

/// Uniform cell grid over the torus with side 1/m >= r, so every neighbour of
/// a point lies in the 3^d cells around its own (with wraparound).
class CellIndex {
 public:
  CellIndex(const TorusPointSet& points, double radius);

  std::size_t cells_per_axis() const noexcept { return cells_per_axis_; }
  std::size_t cell_of(std::size_t node) const { return node_cell_[node]; }
  std::vector<std::size_t> cell_coords(std::size_t cell) const;
  std::size_t cell_id(std::span<const std::size_t> coords) const;
  /// Nodes stored in a cell, ascending.
  std::span<const NodeId> bucket(std::size_t cell) const;
  std::size_t occupied_cells() const noexcept;

 private:
  std::size_t dim_;
  std::size_t cells_per_axis_;
  std::vector<std::size_t> node_cell_;
  // Nodes sorted by (cell, index); bucket boundaries found by binary search.
  std::vector<std::pair<std::size_t, NodeId>> sorted_;
  std::vector<NodeId> sorted_nodes_;
};

/// Edge {i,j} iff torus_distance(x_i, x_j) <= radius, i != j.
GeometricGraph build_rgg(const TorusPointSet& points, double radius, const Metric& metric);

/// O(n^2) reference construction; also the fallback when 1/r < 3.
GeometricGraph build_rgg_all_pairs(const TorusPointSet& points, double radius, const Metric& metric);

/// Grid graph on grid_points(n, d). Vertex-transitive: the neighbour stencil is
/// computed once at the origin and translated, so every node has the same degree.
GeometricGraph build_dgg(std::size_t n, std::size_t d, double radius, const Metric& metric);

/// gamma' = (2 floor(gamma^{1/d}) + 1)^d - 1.
std::size_t dgg_degree(double gamma, std::size_t d);

/// floor(gamma^{1/d}) computed in exact integer arithmetic.
std::size_t chebyshev_reach(double gamma, std::size_t d);

/// A radius strictly inside the shell (k/N, (k+1)/N), so the l_inf grid graph has
/// reach exactly k regardless of rounding. Requires 2k+1 <= N.
double grid_radius_for_reach(std::size_t reach, std::size_t side);

/// The l_inf grid graph whose degree is dgg_degree(gamma, d), with n = side^d.
GeometricGraph build_dgg_for_gamma(double gamma, std::size_t side, std::size_t d);

// Graph file: first line "kind,n,dim,p,radius,seed" (values; seed empty when
// absent), then one "i,j" line per edge with i < j in lexicographic order.
void write_graph(std::ostream& out, const GeometricGraph& g);
GeometricGraph read_graph(std::istream& in);

}  // namespace rgg
