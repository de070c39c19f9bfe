#pragma once

#include "rgg_spectra/laplacian.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace rgg {

inline constexpr const char* kToolkitVersion = "0.3.1";

// Everything a run depends on. Unset numeric fields are 0 (or NaN for gamma);
// lists are kept as the comma-separated text the user gave so the echo and
// the flag parser agree byte for byte.
struct RunConfig {
  std::string command;
  std::size_t d = 1;
  std::size_t n = 0;     // node count
  std::size_t side = 0;  // grid side N, n = N^d
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::size_t gamma_prime = 0;  // overrides dgg_degree(gamma, d) for grid commands
  double alpha = kDefaultAlpha;
  std::string p = "inf";
  std::string kind = "dgg";
  std::uint64_t seed = 1;
  std::string seeds;   // levy; default 1..10
  std::string n_list;  // levy; default 256,1024,4096
  double window_fraction = 0.02;
  bool gap_shift = true;
  std::size_t walkers = 100000;
  std::size_t t_max = 64;
  std::size_t threads = 0;
  bool svg = false;
  std::filesystem::path out = "out";

  /// key = value pairs in a fixed order; the same keys the flag parser accepts.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

struct OutputFile {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  RunConfig config;
  std::string version = kToolkitVersion;
  std::string prng;
  double wall_clock_seconds = 0.0;
  std::vector<OutputFile> outputs;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

// Minimal SVG line plot of columns of a CSV text: x_column against each
// y_column. Depends on nothing but its arguments.
std::string render_svg(const std::string& csv_text, const std::string& x_column,
                       const std::vector<std::string>& y_columns, bool log_x = false, bool log_y = false);

/// Resolves n / side and gamma / gamma' consistency; ConfigError naming the field.
RunConfig validate(RunConfig config);

// Each command writes its CSVs plus run.cfg (a config file that reproduces
// the run) into config.out and finishes with manifest.json.
RunManifest cmd_spectrum(const RunConfig& config);
RunManifest cmd_analytic_spectrum(const RunConfig& config);
RunManifest cmd_levy(const RunConfig& config);
RunManifest cmd_specdim(const RunConfig& config);
RunManifest cmd_diffusion(const RunConfig& config);

/// Dispatches on config.command.
RunManifest run_command(const RunConfig& config);

/// 0 success, 2 config error, 3 capacity error, 4 estimation error, 1 anything else.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace rgg
