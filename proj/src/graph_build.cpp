#include "rgg_spectra/graph_build.hpp"

#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rgg {

std::string to_string(GraphKind kind) { return kind == GraphKind::RGG ? "RGG" : "DGG"; }

GraphKind parse_graph_kind(const std::string& text) {
  if (text == "RGG" || text == "rgg") return GraphKind::RGG;
  if (text == "DGG" || text == "dgg") return GraphKind::DGG;
  throw ArgumentError("unknown graph kind '" + text + "' (expected rgg or dgg)");
}

GeometricGraph::GeometricGraph(GraphKind kind, std::size_t dim, Metric metric, double radius,
                               std::vector<std::vector<NodeId>> adjacency, std::optional<std::uint64_t> seed,
                               std::optional<RegimeParams> params)
    : kind_(kind),
      dim_(dim),
      metric_(metric),
      radius_(radius),
      adjacency_(std::move(adjacency)),
      seed_(seed),
      params_(params) {
  const std::size_t n = adjacency_.size();
  degrees_.resize(n);
  std::size_t endpoint_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& list = adjacency_[i];
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k] >= n) throw ArgumentError("adjacency references node out of range");
      if (list[k] == i) throw ArgumentError("self-loop at node " + std::to_string(i));
      if (k > 0 && list[k - 1] >= list[k]) throw ArgumentError("adjacency of node " + std::to_string(i) +
                                                               " is unsorted or has duplicates");
      const auto& back = adjacency_[list[k]];
      if (!std::binary_search(back.begin(), back.end(), static_cast<NodeId>(i))) {
        throw ArgumentError("adjacency is not symmetric at edge " + std::to_string(i) + "-" +
                            std::to_string(list[k]));
      }
    }
    degrees_[i] = list.size();
    endpoint_count += list.size();
  }
  edge_count_ = endpoint_count / 2;
}

double GeometricGraph::mean_degree() const noexcept {
  return size() == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count_) / static_cast<double>(size());
}

std::optional<std::size_t> GeometricGraph::regular_degree() const noexcept {
  if (degrees_.empty()) return std::nullopt;
  const std::size_t first = degrees_.front();
  for (std::size_t d : degrees_) {
    if (d != first) return std::nullopt;
  }
  return first;
}

bool GeometricGraph::has_isolated_vertex() const noexcept {
  return std::any_of(degrees_.begin(), degrees_.end(), [](std::size_t d) { return d == 0; });
}

std::vector<std::pair<NodeId, NodeId>> GeometricGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (NodeId j : adjacency_[i]) {
      if (j > i) out.emplace_back(static_cast<NodeId>(i), j);
    }
  }
  return out;
}

bool operator==(const GeometricGraph& a, const GeometricGraph& b) {
  return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.metric_ == b.metric_ && a.radius_ == b.radius_ &&
         a.seed_ == b.seed_ && a.adjacency_ == b.adjacency_;
}

// ---------------------------------------------------------------------------

namespace {

// Keeps m^d addressable; a coarser grid still satisfies side >= r.
constexpr double kMaxCells = 1099511627776.0;  // 2^40

std::size_t choose_cells_per_axis(double radius, std::size_t dim) {
  auto m = static_cast<std::size_t>(std::floor(1.0 / radius));
  const auto cap = static_cast<std::size_t>(std::floor(std::pow(kMaxCells, 1.0 / static_cast<double>(dim))));
  return std::max<std::size_t>(1, std::min(m, cap));
}

void check_radius(double radius) {
  if (!(radius > 0.0 && radius < 0.5)) throw ArgumentError("radius must lie in (0, 0.5), got " + fmt17(radius));
}

std::vector<std::vector<NodeId>> symmetrize(std::size_t n, const std::vector<std::vector<NodeId>>& upper) {
  std::vector<std::vector<NodeId>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId j : upper[i]) {
      adjacency[i].push_back(j);
      adjacency[j].push_back(static_cast<NodeId>(i));
    }
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return adjacency;
}

}  // namespace

CellIndex::CellIndex(const TorusPointSet& points, double radius)
    : dim_(points.dim()), cells_per_axis_(choose_cells_per_axis(radius, points.dim())) {
  const std::size_t n = points.size();
  node_cell_.resize(n);
  sorted_.resize(n);
  const auto m = static_cast<double>(cells_per_axis_);
  std::vector<std::size_t> coords(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = points.point(i);
    for (std::size_t k = 0; k < dim_; ++k) {
      coords[k] = std::min(cells_per_axis_ - 1, static_cast<std::size_t>(x[k] * m));
    }
    node_cell_[i] = cell_id(coords);
    sorted_[i] = {node_cell_[i], static_cast<NodeId>(i)};
  }
  std::sort(sorted_.begin(), sorted_.end());
  sorted_nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) sorted_nodes_[i] = sorted_[i].second;
}

std::vector<std::size_t> CellIndex::cell_coords(std::size_t cell) const {
  std::vector<std::size_t> coords(dim_);
  for (std::size_t k = dim_; k-- > 0;) {
    coords[k] = cell % cells_per_axis_;
    cell /= cells_per_axis_;
  }
  return coords;
}

std::size_t CellIndex::cell_id(std::span<const std::size_t> coords) const {
  std::size_t id = 0;
  for (std::size_t c : coords) id = id * cells_per_axis_ + c;
  return id;
}

std::span<const NodeId> CellIndex::bucket(std::size_t cell) const {
  const auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), std::pair<std::size_t, NodeId>{cell, 0});
  const auto hi = std::lower_bound(lo, sorted_.end(), std::pair<std::size_t, NodeId>{cell + 1, 0});
  const auto offset = static_cast<std::size_t>(lo - sorted_.begin());
  return {sorted_nodes_.data() + offset, static_cast<std::size_t>(hi - lo)};
}

std::size_t CellIndex::occupied_cells() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (i == 0 || sorted_[i].first != sorted_[i - 1].first) ++count;
  }
  return count;
}

GeometricGraph build_rgg_all_pairs(const TorusPointSet& points, double radius, const Metric& metric) {
  check_radius(radius);
  const std::size_t n = points.size();
  std::vector<std::vector<NodeId>> upper(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (torus_distance(points.point(i), points.point(j), metric) <= radius) {
        upper[i].push_back(static_cast<NodeId>(j));
      }
    }
  });
  return GeometricGraph(GraphKind::RGG, points.dim(), metric, radius, symmetrize(n, upper), points.seed());
}

GeometricGraph build_rgg(const TorusPointSet& points, double radius, const Metric& metric) {
  check_radius(radius);
  if (points.size() > std::numeric_limits<NodeId>::max()) throw ArgumentError("too many points");
  const CellIndex index(points, radius);
  if (index.cells_per_axis() < 3) return build_rgg_all_pairs(points, radius, metric);

  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  const std::size_t m = index.cells_per_axis();
  std::size_t stencil_size = 1;
  for (std::size_t k = 0; k < d; ++k) stencil_size *= 3;

  std::vector<std::vector<NodeId>> upper(n);
  parallel_for(n, [&](std::size_t i) {
    const auto home = index.cell_coords(index.cell_of(i));
    std::vector<std::size_t> probe(d);
    for (std::size_t s = 0; s < stencil_size; ++s) {
      std::size_t code = s;
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t shift = code % 3;  // 0 -> -1, 1 -> 0, 2 -> +1
        code /= 3;
        probe[k] = (home[k] + m + shift - 1) % m;
      }
      for (NodeId j : index.bucket(index.cell_id(probe))) {
        if (j > i && torus_distance(points.point(i), points.point(j), metric) <= radius) upper[i].push_back(j);
      }
    }
    std::sort(upper[i].begin(), upper[i].end());
  });
  return GeometricGraph(GraphKind::RGG, d, metric, radius, symmetrize(n, upper), points.seed());
}

GeometricGraph build_dgg(std::size_t n, std::size_t d, double radius, const Metric& metric) {
  check_radius(radius);
  const auto side = exact_root(n, d);
  if (!side) {
    throw ArgumentError("build_dgg: n = " + std::to_string(n) + " is not a perfect " + std::to_string(d) +
                        "-th power");
  }
  if (n > std::numeric_limits<NodeId>::max()) throw ArgumentError("too many grid points");
  const std::size_t N = *side;
  const TorusPointSet grid = grid_points(n, d);

  // Offsets (as lattice index vectors) within reach of the origin.
  std::vector<std::vector<std::size_t>> stencil;
  const auto origin = grid.point(0);
  for (std::size_t j = 1; j < n; ++j) {
    if (torus_distance(origin, grid.point(j), metric) <= radius) {
      std::vector<std::size_t> offset(d);
      std::size_t rest = j;
      for (std::size_t k = d; k-- > 0;) {
        offset[k] = rest % N;
        rest /= N;
      }
      stencil.push_back(std::move(offset));
    }
  }

  std::vector<std::vector<NodeId>> adjacency(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<std::size_t> coords(d);
    std::size_t rest = i;
    for (std::size_t k = d; k-- > 0;) {
      coords[k] = rest % N;
      rest /= N;
    }
    auto& list = adjacency[i];
    list.reserve(stencil.size());
    for (const auto& offset : stencil) {
      std::size_t id = 0;
      for (std::size_t k = 0; k < d; ++k) id = id * N + (coords[k] + offset[k]) % N;
      list.push_back(static_cast<NodeId>(id));
    }
    std::sort(list.begin(), list.end());
  });
  return GeometricGraph(GraphKind::DGG, d, metric, radius, std::move(adjacency));
}

std::size_t chebyshev_reach(double gamma, std::size_t d) {
  if (!(gamma >= 0.0)) throw ArgumentError("gamma must be nonnegative");
  if (d == 0) throw ArgumentError("d must be positive");
  auto k = static_cast<std::size_t>(std::floor(std::pow(gamma, 1.0 / static_cast<double>(d))));
  auto power = [d](std::size_t base) {
    double p = 1.0;
    for (std::size_t s = 0; s < d; ++s) p *= static_cast<double>(base);
    return p;
  };
  while (power(k + 1) <= gamma) ++k;
  while (k > 0 && power(k) > gamma) --k;
  return k;
}

std::size_t dgg_degree(double gamma, std::size_t d) {
  const std::size_t width = 2 * chebyshev_reach(gamma, d) + 1;
  std::size_t degree = 1;
  for (std::size_t s = 0; s < d; ++s) degree *= width;
  return degree - 1;
}

double grid_radius_for_reach(std::size_t reach, std::size_t side) {
  if (2 * reach + 1 > side) {
    throw ArgumentError("reach " + std::to_string(reach) + " needs a grid side of at least " +
                        std::to_string(2 * reach + 1) + ", got " + std::to_string(side));
  }
  return (static_cast<double>(reach) + 0.25) / static_cast<double>(side);
}

GeometricGraph build_dgg_for_gamma(double gamma, std::size_t side, std::size_t d) {
  const std::size_t reach = chebyshev_reach(gamma, d);
  if (reach == 0) throw ArgumentError("gamma < 1 gives an edgeless grid graph");
  std::size_t n = 1;
  for (std::size_t s = 0; s < d; ++s) n *= side;
  return build_dgg(n, d, grid_radius_for_reach(reach, side), Metric::infinity());
}

void write_graph(std::ostream& out, const GeometricGraph& g) {
  out << to_string(g.kind()) << ',' << g.size() << ',' << g.dim() << ',' << g.metric().to_string() << ','
      << fmt17(g.radius()) << ',';
  if (g.seed()) out << *g.seed();
  out << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ',' << j << '\n';
}

GeometricGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("graph file: missing header");
  std::vector<std::string> fields;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) fields.push_back(cell);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
  }
  if (fields.size() != 6) throw ArgumentError("graph file: header must have 6 fields (kind,n,dim,p,radius,seed)");
  const GraphKind kind = parse_graph_kind(fields[0]);
  const auto n = static_cast<std::size_t>(parse_integer(fields[1]));
  const auto dim = static_cast<std::size_t>(parse_integer(fields[2]));
  const Metric metric = Metric::parse(fields[3]);
  const double radius = parse_double(fields[4]);
  std::optional<std::uint64_t> seed;
  if (!fields[5].empty()) seed = std::stoull(fields[5]);

  std::vector<std::vector<NodeId>> adjacency(n);
  std::pair<long long, long long> previous{-1, -1};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ArgumentError("graph file: bad edge line '" + line + "'");
    const long long i = parse_integer(line.substr(0, comma));
    const long long j = parse_integer(line.substr(comma + 1));
    if (i < 0 || j < 0 || i >= j || static_cast<std::size_t>(j) >= n) {
      throw ArgumentError("graph file: edge must satisfy 0 <= i < j < n: '" + line + "'");
    }
    if (std::pair{i, j} <= previous) throw ArgumentError("graph file: edges not in lexicographic order");
    previous = {i, j};
    adjacency[i].push_back(static_cast<NodeId>(j));
    adjacency[j].push_back(static_cast<NodeId>(i));
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return GeometricGraph(kind, dim, metric, radius, std::move(adjacency), seed);
}

}  // namespace rgg
