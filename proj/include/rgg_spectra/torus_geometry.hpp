#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rgg {

/// The l_p metric, p in [1, inf]. Infinity is stored as +inf.
class Metric {
 public:
  explicit Metric(double p);
  static Metric infinity() { return Metric(std::numeric_limits<double>::infinity()); }
  static Metric euclidean() { return Metric(2.0); }

  double p() const noexcept { return p_; }
  bool is_infinity() const noexcept { return p_ == std::numeric_limits<double>::infinity(); }

  /// "inf" for p = infinity, otherwise the shortest round-tripping decimal.
  std::string to_string() const;
  /// Accepts "inf", "infinity", "max" or a number >= 1.
  static Metric parse(const std::string& text);

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  double p_;
};

/// n points on the unit torus [0,1)^dim, stored row-major.
class TorusPointSet {
 public:
  TorusPointSet(std::size_t dim, std::vector<double> coords, std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::optional<std::uint64_t> seed_;
};

/// Thermodynamic-regime parameters: constant mean degree gamma at size n.
struct RegimeParams {
  double gamma = 0.0;
  std::size_t n = 0;
  std::size_t d = 0;
  double radius = 0.0;
};

/// l_p distance on the torus; each coordinate difference is wrapped to
/// min(|a-b|, 1-|a-b|).
double torus_distance(std::span<const double> a, std::span<const double> b, const Metric& metric);

/// Volume of the l_p ball of radius r in R^d:
/// (2r)^d Gamma(1+1/p)^d / Gamma(1+d/p).
double ball_volume(double radius, std::size_t d, const Metric& metric);

/// Radius r with ball_volume(r) * n = gamma. Throws RegimeError if r >= 0.5.
double radius_for_gamma(double gamma, std::size_t n, std::size_t d, const Metric& metric);
RegimeParams make_regime(double gamma, std::size_t n, std::size_t d, const Metric& metric);

TorusPointSet sample_uniform_points(std::size_t n, std::size_t d, std::uint64_t seed);

/// Exact integer N with N^d == n, if any.
std::optional<std::size_t> exact_root(std::size_t n, std::size_t d);

/// The lattice {0, 1/N, ..., (N-1)/N}^d in row-major order (last axis fastest).
TorusPointSet grid_points(std::size_t n, std::size_t d);

// CSV layout: first line "dim,n", then one line per point with dim
// comma-separated coordinates at 17 significant digits.
void write_points_csv(std::ostream& out, const TorusPointSet& points);
TorusPointSet read_points_csv(std::istream& in);

}  // namespace rgg
