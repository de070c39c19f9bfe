#pragma once

#include <cstdio>
#include <string>
#include <string_view>

namespace rgg {

/// Decimal with 17 significant digits; round-trips any double.
inline std::string fmt17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

/// Strict string -> double; throws ArgumentError on trailing garbage.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

}  // namespace rgg
