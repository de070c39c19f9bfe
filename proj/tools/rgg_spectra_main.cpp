// rgg-spectra: command line driver for the spectral experiments.

#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/experiment.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/parallel.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <thread>

int main(int argc, char** argv) {
  rgg::RunConfig config;
  CLI::App app{"Spectra of random and deterministic geometric graphs on the torus"};
  app.set_version_flag("--version", std::string(rgg::kToolkitVersion));
  app.require_subcommand(1);
  // Config file holds plain key = value lines; anything on the command line wins.
  app.set_config("--config", "", "Read options from a key = value file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  auto opt = [&](auto&&... args) { return app.add_option(args...)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
  opt("--d", config.d, "Torus dimension");
  opt("--n", config.n, "Number of nodes");
  opt("--N", config.side, "Grid side, n = N^d");
  opt("--gamma", config.gamma, "Mean degree in the thermodynamic regime");
  opt("--gamma-prime", config.gamma_prime, "Grid degree; overrides the value derived from --gamma");
  opt("--alpha", config.alpha, "Regularization weight");
  opt("--p", config.p, "Metric exponent (number >= 1 or inf)");
  opt("--kind", config.kind, "rgg or dgg");
  opt("--seed", config.seed, "Random seed");
  opt("--seeds", config.seeds, "Comma-separated seeds (levy)");
  opt("--n-list", config.n_list, "Comma-separated node counts (levy)");
  opt("--window-fraction", config.window_fraction, "Fraction of the spectrum used by the CDF fit");
  opt("--walkers", config.walkers, "Random walkers");
  opt("--tmax", config.t_max, "Walk length");
  opt("--threads", config.threads, "Worker threads (default: RGG_SPECTRA_THREADS, else all cores)");
  opt("--out", config.out, "Output directory");
  app.add_flag("--gap-shift,!--no-gap-shift", config.gap_shift, "Subtract alpha/(gamma'+alpha) before fitting (specdim)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_flag("--svg,!--no-svg", config.svg, "Also write SVG plots of the CSV data")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  for (const char* name : {"spectrum", "analytic-spectrum", "levy", "specdim", "diffusion"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("spectrum")->description("Dense eigensolve of one graph, with the closed form for grids");
  app.get_subcommand("analytic-spectrum")->description("Closed-form grid spectrum, mode by mode");
  app.get_subcommand("levy")->description("Levy distance between random and grid spectra over n and seeds");
  app.get_subcommand("specdim")->description("Spectral dimension from the CDF, heat trace and random walks");
  app.get_subcommand("diffusion")->description("Heat trace and Monte Carlo return probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  std::size_t threads = config.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("RGG_SPECTRA_THREADS"); env && *env) {
      try {
        const long long v = rgg::parse_integer(env);
        if (v <= 0) throw rgg::ArgumentError("not positive");
        threads = static_cast<std::size_t>(v);
      } catch (const rgg::ArgumentError&) {
        std::cerr << "error: RGG_SPECTRA_THREADS must be a positive integer, got '" << env << "'\n";
        return 2;
      }
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  rgg::set_worker_threads(static_cast<unsigned>(threads));

  try {
    const rgg::RunManifest manifest = rgg::run_command(config);
    for (const auto& o : manifest.outputs) std::cout << (config.out / o.name).string() << "  " << o.sha256 << '\n';
    std::cout << (config.out / "manifest.json").string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rgg::exit_code_for(e);
  }
}
