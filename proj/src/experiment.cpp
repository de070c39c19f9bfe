#include "rgg_spectra/experiment.hpp"

#include "rgg_spectra/analytic_spectrum.hpp"
#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/graph_build.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/parallel.hpp"
#include "rgg_spectra/rng.hpp"
#include "rgg_spectra/spectral_dimension.hpp"
#include "rgg_spectra/spectrum_analysis.hpp"
#include "rgg_spectra/torus_geometry.hpp"

#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rgg {

namespace fs = std::filesystem;

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("d", std::to_string(d));
  if (n != 0) kv.emplace_back("n", std::to_string(n));
  if (side != 0) kv.emplace_back("N", std::to_string(side));
  if (!std::isnan(gamma)) kv.emplace_back("gamma", fmt17(gamma));
  if (gamma_prime != 0) kv.emplace_back("gamma-prime", std::to_string(gamma_prime));
  kv.emplace_back("alpha", fmt17(alpha));
  kv.emplace_back("p", p);
  kv.emplace_back("kind", kind);
  kv.emplace_back("seed", std::to_string(seed));
  if (!seeds.empty()) kv.emplace_back("seeds", seeds);
  if (!n_list.empty()) kv.emplace_back("n-list", n_list);
  kv.emplace_back("window-fraction", fmt17(window_fraction));
  kv.emplace_back("gap-shift", gap_shift ? "true" : "false");
  kv.emplace_back("walkers", std::to_string(walkers));
  kv.emplace_back("tmax", std::to_string(t_max));
  kv.emplace_back("svg", svg ? "true" : "false");
  return kv;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

// --- svg --------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool to_number(const std::string& s, double& out) {
  try {
    out = parse_double(trim(s));
    return std::isfinite(out);
  } catch (const ArgumentError&) {
    return false;
  }
}

}  // namespace

std::string render_svg(const std::string& csv_text, const std::string& x_column,
                       const std::vector<std::string>& y_columns, bool log_x, bool log_y) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("render_svg: empty CSV");
  const auto header = split(line, ',');
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ArgumentError("render_svg: no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(x_column);
  std::vector<std::size_t> yi;
  for (const auto& y : y_columns) yi.push_back(column(y));

  std::vector<std::vector<std::pair<double, double>>> series(yi.size());
  while (std::getline(in, line)) {
    const auto cells = split(line, ',');
    double x = 0.0;
    if (xi >= cells.size() || !to_number(cells[xi], x)) continue;
    if (log_x) {
      if (x <= 0.0) continue;
      x = std::log10(x);
    }
    for (std::size_t k = 0; k < yi.size(); ++k) {
      double y = 0.0;
      if (yi[k] >= cells.size() || !to_number(cells[yi[k]], y)) continue;
      if (log_y) {
        if (y <= 0.0) continue;
        y = std::log10(y);
      }
      series[k].emplace_back(x, y);
    }
  }

  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s) {
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;

  constexpr double kW = 640, kH = 400, kM = 50;
  static const char* kColours[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  auto px = [&](double x) { return kM + (x - x0) / (x1 - x0) * (kW - 2 * kM); };
  auto py = [&](double y) { return kH - kM - (y - y0) / (y1 - y0) * (kH - 2 * kM); };
  auto label = [](double v, bool log) { return fmt17(log ? std::pow(10.0, v) : v).substr(0, 10); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  svg << "<rect x=\"" << kM << "\" y=\"" << kM << "\" width=\"" << kW - 2 * kM << "\" height=\"" << kH - 2 * kM
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kM << "\" y=\"" << kH - kM / 3 << "\" font-size=\"11\">" << x_column << (log_x ? " (log)" : "")
      << ": " << label(x0, log_x) << " .. " << label(x1, log_x) << "</text>\n";
  svg << "<text x=\"4\" y=\"" << kM / 2 << "\" font-size=\"11\">y" << (log_y ? " (log)" : "") << ": "
      << label(y0, log_y) << " .. " << label(y1, log_y) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* colour = kColours[k % std::size(kColours)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (const auto& [x, y] : series[k]) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      svg << buf;
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kW - kM - 150 << "\" y=\"" << kM + 14 * (k + 1) << "\" font-size=\"11\" fill=\"" << colour
        << "\">" << y_columns[k] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// --- validation -------------------------------------------------------------

namespace {

Metric metric_of(const RunConfig& c) {
  try {
    return Metric::parse(c.p);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("p: ") + e.what());
  }
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text, const std::string& field) {
  std::vector<std::uint64_t> values;
  for (const auto& item : split(text, ',')) {
    const std::string t = trim(item);
    try {
      const long long v = parse_integer(t);
      if (v < 0) throw ArgumentError("negative");
      values.push_back(static_cast<std::uint64_t>(v));
    } catch (const ArgumentError&) {
      throw ConfigError(field + ": '" + t + "' is not a non-negative integer");
    }
  }
  if (values.empty()) throw ConfigError(field + ": empty list");
  return values;
}

std::size_t require_side(const RunConfig& c) {
  if (c.side == 0) throw ConfigError("N: a grid side is required (give --N, or --n as a perfect d-th power)");
  return c.side;
}

std::size_t require_n(const RunConfig& c) {
  if (c.n == 0) throw ConfigError("n: a node count is required (--n or --N)");
  return c.n;
}

double require_gamma(const RunConfig& c) {
  if (std::isnan(c.gamma)) throw ConfigError("gamma: required");
  return c.gamma;
}

// gamma' for grid commands: explicit --gamma-prime, else the degree of the
// l_inf grid graph matched to gamma.
std::size_t grid_degree(const RunConfig& c) {
  if (c.gamma_prime != 0) return c.gamma_prime;
  return dgg_degree(require_gamma(c), c.d);
}

// l_inf grid graph of degree gamma' on side^d nodes.
GeometricGraph grid_graph(std::size_t side, std::size_t d, std::size_t gamma_prime) {
  const std::size_t width = neighbourhood_width(gamma_prime, d);
  if (width > side) {
    throw ConfigError("N: grid side " + std::to_string(side) + " is smaller than the neighbourhood width " +
                      std::to_string(width));
  }
  const std::size_t n = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(side), static_cast<double>(d))));
  return build_dgg(n, d, grid_radius_for_reach((width - 1) / 2, side), Metric::infinity());
}

}  // namespace

RunConfig validate(RunConfig c) {
  if (c.d == 0 || c.d > 16) throw ConfigError("d: must be in [1, 16], got " + std::to_string(c.d));
  if (!(std::isfinite(c.alpha) && c.alpha >= 0.0)) throw ConfigError("alpha: must be finite and >= 0");
  if (!std::isnan(c.gamma) && !(std::isfinite(c.gamma) && c.gamma > 0.0)) throw ConfigError("gamma: must be > 0");
  if (!(c.window_fraction > 0.0 && c.window_fraction <= 1.0)) throw ConfigError("window-fraction: must be in (0, 1]");
  if (c.walkers == 0) throw ConfigError("walkers: must be positive");
  metric_of(c);
  try {
    c.kind = parse_graph_kind(c.kind) == GraphKind::DGG ? "dgg" : "rgg";
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("kind: ") + e.what());
  }
  if (c.side != 0) {
    double n = std::pow(static_cast<double>(c.side), static_cast<double>(c.d));
    if (n > 1e12) throw ConfigError("N: side^d is too large");
    const auto derived = static_cast<std::size_t>(std::llround(n));
    if (c.n != 0 && c.n != derived) {
      throw ConfigError("n: " + std::to_string(c.n) + " does not equal N^d = " + std::to_string(derived));
    }
    c.n = derived;
  } else if (c.n != 0) {
    if (const auto root = exact_root(c.n, c.d)) c.side = *root;
  }
  if (!c.seeds.empty()) parse_u64_list(c.seeds, "seeds");
  if (!c.n_list.empty()) parse_u64_list(c.n_list, "n-list");
  return c;
}

// --- run bookkeeping ----------------------------------------------------------

namespace {

class RunWriter {
 public:
  explicit RunWriter(const RunConfig& config) : config_(config), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(config_.out);
  }

  void add(const std::string& name, const std::string& text) {
    std::ofstream out(config_.out / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (config_.out / name).string());
    out << text;
    if (!out) throw Error("write failed for " + (config_.out / name).string());
    outputs_.push_back({name, sha256_hex(text), text.size()});
  }

  void add_csv(const std::string& name, const std::string& text, const std::string& x,
               const std::vector<std::string>& ys, bool log_x = false, bool log_y = false) {
    add(name, text);
    if (config_.svg) add(fs::path(name).replace_extension(".svg").string(), render_svg(text, x, ys, log_x, log_y));
  }

  RunManifest finish() {
    std::string cfg;
    for (const auto& [k, v] : config_.echo()) cfg += k + " = \"" + v + "\"\n";
    add("run.cfg", cfg);

    RunManifest manifest;
    manifest.config = config_;
    manifest.prng = kPrngAlgorithm;
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest.outputs = outputs_;

    nlohmann::ordered_json j;
    j["command"] = config_.command;
    nlohmann::ordered_json echo = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_.echo()) echo[k] = v;
    j["config"] = echo;
    j["version"] = manifest.version;
    j["prng"] = manifest.prng;
    j["threads"] = worker_threads();
    j["wall_clock_seconds"] = manifest.wall_clock_seconds;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& o : outputs_) {
      j["outputs"].push_back({{"file", o.name}, {"sha256", o.sha256}, {"bytes", o.bytes}});
    }
    std::ofstream out(config_.out / "manifest.json", std::ios::binary | std::ios::trunc);
    out << j.dump(2) << '\n';
    if (!out) throw Error("cannot write manifest.json");
    return manifest;
  }

 private:
  RunConfig config_;
  std::chrono::steady_clock::time_point start_;
  std::vector<OutputFile> outputs_;
};

std::string eigenvalues_csv(const SpectralDistribution& spec) {
  std::ostringstream out;
  out << "index,lambda\n";
  const auto& v = spec.eigenvalues();
  for (std::size_t i = 0; i < v.size(); ++i) out << i << ',' << fmt17(v[i]) << '\n';
  return out.str();
}

// Mode sweep in lattice order; w = |m|^d / n.
std::string modes_csv(std::size_t side, std::size_t d, std::size_t gamma_prime, double alpha) {
  std::ostringstream out;
  out << "index";
  for (std::size_t s = 1; s <= d; ++s) out << ",m" << s;
  out << ",w,lambda\n";
  const ModeLattice lattice(side, d);
  const double n = static_cast<double>(lattice.size());
  std::size_t index = 0;
  for (const ModeIndex& mode : lattice) {
    double norm2 = 0.0;
    out << index++;
    for (std::size_t c : mode.m) {
      out << ',' << c;
      norm2 += static_cast<double>(c) * static_cast<double>(c);
    }
    out << ',' << fmt17(std::pow(norm2, static_cast<double>(d) / 2.0) / n) << ','
        << fmt17(dgg_eigenvalue(mode, gamma_prime, alpha)) << '\n';
  }
  return out.str();
}

void summary_line(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << key << ',' << value << '\n';
}

}  // namespace

// --- commands ---------------------------------------------------------------

RunManifest cmd_spectrum(const RunConfig& raw) {
  const RunConfig c = validate(raw);
  const Metric metric = metric_of(c);
  RunWriter run(c);
  std::ostringstream summary;
  summary << "key,value\n";

  if (c.kind == "dgg") {
    const std::size_t side = require_side(c);
    std::optional<std::size_t> gamma_prime;
    GeometricGraph g = [&] {
      if (metric.is_infinity()) {
        gamma_prime = grid_degree(c);
        return grid_graph(side, c.d, *gamma_prime);
      }
      return build_dgg(c.n, c.d, radius_for_gamma(require_gamma(c), c.n, c.d, metric), metric);
    }();
    const SpectralDistribution numeric = full_spectrum(assemble_dgg_laplacian(g, c.alpha));
    run.add_csv("eigenvalues.csv", eigenvalues_csv(numeric), "index", {"lambda"});
    summary_line(summary, "n", std::to_string(g.size()));
    summary_line(summary, "degree", std::to_string(g.degree(0)));
    summary_line(summary, "radius", fmt17(g.radius()));
    summary_line(summary, "lambda_min", fmt17(numeric.min()));
    summary_line(summary, "lambda_max", fmt17(numeric.max()));
    if (gamma_prime) {
      const SpectralDistribution analytic = analytic_dgg_spectrum(side, c.d, *gamma_prime, c.alpha);
      std::ostringstream cmp;
      cmp << "index,numeric,analytic,abs_diff\n";
      double worst = 0.0;
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double a = numeric.eigenvalues()[i];
        const double b = analytic.eigenvalues()[i];
        worst = std::max(worst, std::abs(a - b));
        cmp << i << ',' << fmt17(a) << ',' << fmt17(b) << ',' << fmt17(std::abs(a - b)) << '\n';
      }
      run.add_csv("comparison.csv", cmp.str(), "index", {"numeric", "analytic"});
      run.add_csv("modes.csv", modes_csv(side, c.d, *gamma_prime, c.alpha), "index", {"lambda"});
      summary_line(summary, "gamma_prime", std::to_string(*gamma_prime));
      summary_line(summary, "max_abs_diff", fmt17(worst));
      summary_line(summary, "fiedler_closed_form", fmt17(fiedler_eigenvalue(side, *gamma_prime, c.alpha, c.d)));
    }
  } else {
    const std::size_t n = require_n(c);
    const double gamma = require_gamma(c);
    const double radius = radius_for_gamma(gamma, n, c.d, metric);
    const TorusPointSet points = sample_uniform_points(n, c.d, c.seed);
    const GeometricGraph g = build_rgg(points, radius, metric);
    const SpectralDistribution numeric = full_spectrum(assemble_rgg_laplacian(g, c.alpha));
    run.add_csv("eigenvalues.csv", eigenvalues_csv(numeric), "index", {"lambda"});
    summary_line(summary, "n", std::to_string(n));
    summary_line(summary, "radius", fmt17(radius));
    summary_line(summary, "mean_degree", fmt17(g.mean_degree()));
    summary_line(summary, "edges", std::to_string(g.edge_count()));
    summary_line(summary, "isolated_vertex", g.has_isolated_vertex() ? "1" : "0");
    summary_line(summary, "lambda_min", fmt17(numeric.min()));
    summary_line(summary, "lambda_max", fmt17(numeric.max()));
    summary_line(summary, "fiedler", fmt17(numeric.size() > 1 ? numeric.eigenvalues()[1] : 0.0));
  }
  run.add("summary.csv", summary.str());
  return run.finish();
}

RunManifest cmd_analytic_spectrum(const RunConfig& raw) {
  const RunConfig c = validate(raw);
  const std::size_t side = require_side(c);
  const std::size_t gamma_prime = grid_degree(c);
  if (neighbourhood_width(gamma_prime, c.d) > side) {
    throw ConfigError("N: grid side " + std::to_string(side) + " is smaller than the neighbourhood width");
  }
  RunWriter run(c);
  run.add_csv("modes.csv", modes_csv(side, c.d, gamma_prime, c.alpha), "index", {"lambda"});
  std::ostringstream summary;
  summary << "key,value\n";
  summary_line(summary, "n", std::to_string(c.n));
  summary_line(summary, "gamma_prime", std::to_string(gamma_prime));
  if (side >= 2) summary_line(summary, "fiedler", fmt17(fiedler_eigenvalue(side, gamma_prime, c.alpha, c.d)));
  summary_line(summary, "regularization_gap", fmt17(regularization_gap(gamma_prime, c.alpha)));
  run.add("summary.csv", summary.str());
  return run.finish();
}

RunManifest cmd_levy(const RunConfig& raw) {
  RunConfig c = validate(raw);
  if (c.seeds.empty()) c.seeds = "1,2,3,4,5,6,7,8,9,10";
  if (c.n_list.empty()) c.n_list = "256,1024,4096";
  ConvergenceConfig cc;
  cc.d = c.d;
  cc.gamma = require_gamma(c);
  cc.alpha = c.alpha;
  cc.metric = metric_of(c);
  for (auto v : parse_u64_list(c.n_list, "n-list")) cc.n_list.push_back(static_cast<std::size_t>(v));
  cc.seeds = parse_u64_list(c.seeds, "seeds");
  for (std::size_t n : cc.n_list) {
    if (!exact_root(n, c.d)) throw ConfigError("n-list: " + std::to_string(n) + " is not a perfect d-th power");
    if (n > kDenseSolveCap) {
      throw CapacityError("n-list: " + std::to_string(n) + " exceeds the dense solve cap of " +
                          std::to_string(kDenseSolveCap));
    }
  }

  const auto rows = convergence_study(cc);
  RunWriter run(c);
  std::ostringstream conv;
  write_convergence_csv(conv, rows);
  run.add("convergence.csv", conv.str());

  std::ostringstream summary;
  summary << "n,median_levy_cubed,exceed_fraction,threshold\n";
  for (std::size_t start = 0; start < rows.size();) {
    std::size_t stop = start;
    while (stop < rows.size() && rows[stop].n == rows[start].n) ++stop;
    std::vector<double> cubes;
    std::size_t exceed = 0;
    for (std::size_t k = start; k < stop; ++k) {
      cubes.push_back(rows[k].levy_cubed);
      exceed += rows[k].exceeds ? 1 : 0;
    }
    std::sort(cubes.begin(), cubes.end());
    const std::size_t m = cubes.size();
    const double median = m % 2 ? cubes[m / 2] : 0.5 * (cubes[m / 2 - 1] + cubes[m / 2]);
    summary << rows[start].n << ',' << fmt17(median) << ',' << fmt17(static_cast<double>(exceed) / static_cast<double>(m))
            << ',' << fmt17(rows[start].threshold) << '\n';
    start = stop;
  }
  run.add_csv("summary.csv", summary.str(), "n", {"median_levy_cubed"}, true, true);
  return run.finish();
}

RunManifest cmd_specdim(const RunConfig& raw) {
  const RunConfig c = validate(raw);
  const std::size_t side = require_side(c);
  const std::size_t gamma_prime = grid_degree(c);
  RunWriter run(c);

  SpectralDistribution spec = analytic_dgg_spectrum(side, c.d, gamma_prime, c.alpha);
  if (c.gap_shift) spec = remove_spectral_gap(spec, regularization_gap(gamma_prime, c.alpha));

  std::vector<SpecDimEstimate> estimates;
  CdfFitOptions options;
  options.window_fraction = c.window_fraction;
  estimates.push_back(estimate_ds_from_spectrum(spec, options));

  const HeatTrace ht = heat_trace(spec, default_heat_times());
  estimates.push_back(estimate_ds_from_heat_trace(ht, default_heat_window(ht)));

  const GeometricGraph g = grid_graph(side, c.d, gamma_prime);
  const auto samples = mc_return_probability(g, c.t_max, c.walkers, c.seed);
  estimates.push_back(estimate_ds_from_return_probability(samples, g.size(), default_return_window(samples, g.size())));

  std::ostringstream est;
  write_estimates_csv(est, estimates);
  run.add("estimates.csv", est.str());

  std::ostringstream heat;
  write_heat_trace_csv(heat, ht);
  run.add_csv("heat_trace.csv", heat.str(), "t", {"p0_minus_offset"}, true, true);

  std::ostringstream mc;
  write_return_csv(mc, samples);
  run.add("mc_return.csv", mc.str());

  // Small-w curve: exact continuum eigenvalue vs the second-order form.
  std::ostringstream taylor;
  taylor << "w,exact_axis,exact_diagonal,taylor,rel_dev_axis\n";
  for (double w : log_time_grid(1e-5, 1e-1, 10)) {
    const double axis = limit_eigenvalue_axis(w, gamma_prime, c.alpha, c.d);
    const double diag = limit_eigenvalue_diagonal(w, gamma_prime, c.alpha, c.d);
    const double tl = taylor_lambda(w, gamma_prime, c.alpha, c.d);
    taylor << fmt17(w) << ',' << fmt17(axis) << ',' << fmt17(diag) << ',' << fmt17(tl) << ','
           << fmt17(std::abs(tl - axis) / axis) << '\n';
  }
  run.add_csv("taylor.csv", taylor.str(), "w", {"exact_axis", "exact_diagonal", "taylor"}, true, true);
  return run.finish();
}

RunManifest cmd_diffusion(const RunConfig& raw) {
  RunConfig c = raw;
  if (c.side == 0 && c.n == 0) c.side = 16;
  if (std::isnan(c.gamma) && c.gamma_prime == 0) c.gamma_prime = 4;
  c = validate(c);
  const std::size_t side = require_side(c);
  const std::size_t gamma_prime = grid_degree(c);
  const GeometricGraph g = grid_graph(side, c.d, gamma_prime);
  RunWriter run(c);

  const SpectralDistribution spec = analytic_dgg_spectrum(side, c.d, gamma_prime, c.alpha);
  std::ostringstream heat;
  write_heat_trace_csv(heat, heat_trace(spec, default_heat_times()));
  run.add_csv("heat_trace.csv", heat.str(), "t", {"p0"}, true, true);

  const auto samples = mc_return_probability(g, c.t_max, c.walkers, c.seed);
  std::ostringstream mc;
  write_return_csv(mc, samples);
  run.add("mc_return.csv", mc.str());

  const auto nu = grid_transition_eigenvalues(side, c.d, gamma_prime);
  const double walkers = static_cast<double>(c.walkers);
  std::ostringstream cmp;
  cmp << "t,mc,spectral,binomial_stderr,z,within_3se\n";
  for (const auto& s : samples) {
    const double p = std::clamp(spectral_return_probability(nu, s.t), 0.0, 1.0);
    const double se = std::sqrt(p * (1.0 - p) / walkers);
    const double diff = s.return_freq - p;
    const double z = se > 0.0 ? diff / se : 0.0;
    const bool ok = std::abs(diff) <= 3.0 * se + 1e-12;
    cmp << s.t << ',' << fmt17(s.return_freq) << ',' << fmt17(p) << ',' << fmt17(se) << ',' << fmt17(z) << ','
        << (ok ? 1 : 0) << '\n';
  }
  run.add_csv("mc_vs_spectral.csv", cmp.str(), "t", {"mc", "spectral"}, false, true);
  return run.finish();
}

RunManifest run_command(const RunConfig& config) {
  if (config.command == "spectrum") return cmd_spectrum(config);
  if (config.command == "analytic-spectrum") return cmd_analytic_spectrum(config);
  if (config.command == "levy") return cmd_levy(config);
  if (config.command == "specdim") return cmd_specdim(config);
  if (config.command == "diffusion") return cmd_diffusion(config);
  throw ConfigError("command: unknown subcommand '" + config.command + "'");
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const CapacityError*>(&e)) return 3;
  if (dynamic_cast<const EstimationError*>(&e)) return 4;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ArgumentError*>(&e) ||
      dynamic_cast<const RegimeError*>(&e) || dynamic_cast<const SingularityError*>(&e)) {
    return 2;
  }
  return 1;
}

}  // namespace rgg
