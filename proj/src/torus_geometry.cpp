#include "rgg_spectra/torus_geometry.hpp"

#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/rng.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace rgg {

Metric::Metric(double p) : p_(p) {
  if (!(p >= 1.0)) throw ArgumentError("metric exponent p must be >= 1 or infinity, got " + fmt17(p));
}

std::string Metric::to_string() const { return is_infinity() ? "inf" : fmt17(p_); }

Metric Metric::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "max" || text == "Inf") return infinity();
  return Metric(parse_double(text));
}

TorusPointSet::TorusPointSet(std::size_t dim, std::vector<double> coords, std::optional<std::uint64_t> seed)
    : dim_(dim), coords_(std::move(coords)), seed_(seed) {
  if (dim_ == 0) throw ArgumentError("point set dimension must be positive");
  if (coords_.empty()) throw ArgumentError("point set must contain at least one point");
  if (coords_.size() % dim_ != 0) throw ArgumentError("coordinate count is not a multiple of the dimension");
  for (double c : coords_) {
    if (!(c >= 0.0 && c < 1.0)) throw ArgumentError("coordinate outside [0,1): " + fmt17(c));
  }
}

double torus_distance(std::span<const double> a, std::span<const double> b, const Metric& metric) {
  if (a.size() != b.size()) {
    throw ArgumentError("torus_distance: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  const double p = metric.p();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double delta = std::abs(a[k] - b[k]);
    delta = std::min(delta, 1.0 - delta);
    if (metric.is_infinity()) {
      acc = std::max(acc, delta);
    } else if (p == 1.0) {
      acc += delta;
    } else if (p == 2.0) {
      acc += delta * delta;
    } else {
      acc += std::pow(delta, p);
    }
  }
  if (metric.is_infinity() || p == 1.0) return acc;
  if (p == 2.0) return std::sqrt(acc);
  return std::pow(acc, 1.0 / p);
}

namespace {

// Gamma(1+1/p)^d / Gamma(1+d/p): the l_p unit-ball volume divided by 2^d.
double ball_shape_factor(std::size_t d, const Metric& metric) {
  if (metric.is_infinity()) return 1.0;
  const double p = metric.p();
  const double dd = static_cast<double>(d);
  return std::exp(dd * std::lgamma(1.0 + 1.0 / p) - std::lgamma(1.0 + dd / p));
}

}  // namespace

double ball_volume(double radius, std::size_t d, const Metric& metric) {
  return std::pow(2.0 * radius, static_cast<double>(d)) * ball_shape_factor(d, metric);
}

double radius_for_gamma(double gamma, std::size_t n, std::size_t d, const Metric& metric) {
  if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
  if (n == 0 || d == 0) throw ArgumentError("n and d must be positive");
  if (gamma >= static_cast<double>(n)) {
    throw RegimeError("gamma = " + fmt17(gamma) + " is not below n = " + std::to_string(n));
  }
  const double volume = gamma / static_cast<double>(n) / ball_shape_factor(d, metric);
  const double radius = 0.5 * std::pow(volume, 1.0 / static_cast<double>(d));
  if (!(radius < 0.5)) {
    throw RegimeError("radius " + fmt17(radius) + " >= 0.5: gamma = " + fmt17(gamma) + " too large for n = " +
                      std::to_string(n));
  }
  return radius;
}

RegimeParams make_regime(double gamma, std::size_t n, std::size_t d, const Metric& metric) {
  return {gamma, n, d, radius_for_gamma(gamma, n, d, metric)};
}

TorusPointSet sample_uniform_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample_uniform_points: n must be >= 1");
  if (d == 0) throw ArgumentError("sample_uniform_points: d must be >= 1");
  Rng rng(seed);
  std::vector<double> coords(n * d);
  for (double& c : coords) c = rng.uniform();
  return TorusPointSet(d, std::move(coords), seed);
}

std::optional<std::size_t> exact_root(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0) return std::nullopt;
  const auto guess = static_cast<long long>(std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
  for (long long candidate = std::max(1LL, guess - 1); candidate <= guess + 1; ++candidate) {
    std::size_t power = 1;
    bool overflow = false;
    for (std::size_t k = 0; k < d && !overflow; ++k) {
      if (power > n / static_cast<std::size_t>(candidate)) overflow = true;
      power *= static_cast<std::size_t>(candidate);
    }
    if (!overflow && power == n) return static_cast<std::size_t>(candidate);
  }
  return std::nullopt;
}

TorusPointSet grid_points(std::size_t n, std::size_t d) {
  const auto side = exact_root(n, d);
  if (!side) {
    throw ArgumentError("grid_points: n = " + std::to_string(n) + " is not a perfect " + std::to_string(d) +
                        "-th power");
  }
  const std::size_t N = *side;
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (std::size_t k = d; k-- > 0;) {
      coords[i * d + k] = static_cast<double>(rest % N) / static_cast<double>(N);
      rest /= N;
    }
  }
  return TorusPointSet(d, std::move(coords));
}

void write_points_csv(std::ostream& out, const TorusPointSet& points) {
  out << points.dim() << ',' << points.size() << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = points.point(i);
    for (std::size_t k = 0; k < x.size(); ++k) out << (k ? "," : "") << fmt17(x[k]);
    out << '\n';
  }
}

TorusPointSet read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("points csv: missing header");
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw ArgumentError("points csv: header must be 'dim,n'");
  const auto dim = static_cast<std::size_t>(parse_integer(line.substr(0, comma)));
  const auto n = static_cast<std::size_t>(parse_integer(line.substr(comma + 1)));
  std::vector<double> coords;
  coords.reserve(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ArgumentError("points csv: expected " + std::to_string(n) + " rows");
    std::stringstream row(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(row, cell, ',')) {
      coords.push_back(parse_double(cell));
      ++count;
    }
    if (count != dim) throw ArgumentError("points csv: row " + std::to_string(i) + " has wrong arity");
  }
  return TorusPointSet(dim, std::move(coords));
}

}  // namespace rgg
