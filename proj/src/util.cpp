#include "rgg_spectra/errors.hpp"
#include "rgg_spectra/numfmt.hpp"
#include "rgg_spectra/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdlib>
#include <limits>
#include <string>

namespace rgg {

namespace {
std::atomic<unsigned> g_worker_threads{std::max(1u, std::thread::hardware_concurrency())};
}

unsigned worker_threads() noexcept { return g_worker_threads.load(std::memory_order_relaxed); }

void set_worker_threads(unsigned threads) noexcept {
  g_worker_threads.store(std::max(1u, threads), std::memory_order_relaxed);
}

double parse_double(std::string_view text) {
  const std::string owned(text);
  if (owned == "inf" || owned == "infinity") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || errno == ERANGE) {
    throw ArgumentError("not a number: '" + owned + "'");
  }
  return value;
}

long long parse_integer(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const long long value = std::strtoll(owned.c_str(), &end, 10);
  if (owned.empty() || end != owned.c_str() + owned.size() || errno == ERANGE) {
    throw ArgumentError("not an integer: '" + owned + "'");
  }
  return value;
}

}  // namespace rgg
