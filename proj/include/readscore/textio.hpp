#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace readscore {

/// Fixed-point decimal with '.' separator, locale-independent.
std::string fmt_fixed(double value, int places = 4);

/// Round half away from zero to `places` decimals (for JSON payloads).
double round_places(double value, int places = 4);

std::string_view trim(std::string_view s);

/// Minimal CSV split: no quoting, fields taken verbatim apart from a
/// trailing '\r'.
std::vector<std::string> split_fields(std::string_view line, char sep = ',');

}  // namespace readscore
