// Independent reference implementations used only by the tests. Nothing here
// calls into the code under test except for plain data types.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// Wrapped l_p torus distance written the slow obvious way.
inline double torus_distance(const std::vector<double>& a, const std::vector<double>& b, double p) {
  std::vector<double> diff(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    double delta = std::fmod(std::abs(a[k] - b[k]), 1.0);
    diff[k] = delta > 0.5 ? 1.0 - delta : delta;
  }
  if (std::isinf(p)) return *std::max_element(diff.begin(), diff.end());
  long double sum = 0.0L;
  for (double x : diff) sum += std::pow(static_cast<long double>(x), static_cast<long double>(p));
  return static_cast<double>(std::pow(sum, 1.0L / static_cast<long double>(p)));
}

inline std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

// Eigenvalues of a real symmetric block-circulant matrix from its first row:
// a d-dimensional DFT of that row (cosine sum, since the row is even).
inline std::vector<double> circulant_eigenvalues(const std::vector<double>& first_row, std::size_t side, std::size_t d) {
  std::size_t n = 1;
  for (std::size_t s = 0; s < d; ++s) n *= side;
  std::vector<double> out(n);
  std::vector<std::size_t> m(d), j(d);
  for (std::size_t mi = 0; mi < n; ++mi) {
    std::size_t r = mi;
    for (std::size_t s = d; s-- > 0;) {
      m[s] = r % side;
      r /= side;
    }
    long double sum = 0.0L;
    for (std::size_t ji = 0; ji < n; ++ji) {
      std::size_t q = ji;
      long double phase = 0.0L;
      for (std::size_t s = d; s-- > 0;) {
        phase += static_cast<long double>(m[s] * (q % side)) / static_cast<long double>(side);
        q /= side;
      }
      sum += first_row[ji] * std::cos(2.0L * std::numbers::pi_v<long double> * phase);
    }
    out[mi] = static_cast<double>(sum);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Levy distance restricted to the grid eps = k * step, smallest feasible k.
// Feasibility is checked by brute force: both CDFs are evaluated by linear
// scans at every breakpoint, at midpoints between consecutive candidates, and
// beyond the ends.
class LevyGrid {
 public:
  LevyGrid(std::vector<double> a, std::vector<double> b) : a_(std::move(a)), b_(std::move(b)) {}

  double distance(double step) const {
    // feasible(eps) is monotone; binary search over the integer grid.
    long lo = -1;
    long hi = static_cast<long>(std::ceil(1.0 / step));
    while (hi - lo > 1) {
      const long mid = (lo + hi) / 2;
      (feasible(static_cast<double>(mid) * step) ? hi : lo) = mid;
    }
    return static_cast<double>(hi) * step;
  }

  bool feasible(double eps) const {
    std::vector<double> xs;
    for (double v : b_) xs.push_back(v);
    for (double v : a_) {
      xs.push_back(v + eps);
      xs.push_back(v - eps);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> probes;
    probes.push_back(xs.front() - 1.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      probes.push_back(xs[i]);
      if (i + 1 < xs.size()) probes.push_back(0.5 * (xs[i] + xs[i + 1]));
    }
    probes.push_back(xs.back() + 1.0);
    for (double x : probes) {
      const double fb = cdf(b_, x);
      if (cdf(a_, x - eps) - eps > fb + 1e-15) return false;
      if (fb > cdf(a_, x + eps) + eps + 1e-15) return false;
    }
    return true;
  }

 private:
  static double cdf(const std::vector<double>& v, double x) {
    std::size_t count = 0;
    for (double e : v) count += e < x ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(v.size());
  }
  std::vector<double> a_;
  std::vector<double> b_;
};

inline Eigen::MatrixXd random_symmetric(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
  }
  return m;
}

// (1/n) tr(P^t) for P = A / degree by repeated dense multiplication.
inline std::vector<double> return_probabilities(const Eigen::MatrixXd& transition, std::size_t t_max) {
  const auto n = static_cast<double>(transition.rows());
  std::vector<double> out;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(transition.rows(), transition.cols());
  for (std::size_t t = 0; t <= t_max; ++t) {
    out.push_back(power.trace() / n);
    power = power * transition;
  }
  return out;
}

// Least squares slope by the normal equations in long double.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<long double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

}  // namespace oracle
