#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smpd {

/// Scientific notation with 12 significant digits, the CSV dialect used
/// by every exporter. Deterministic across runs and platforms.
std::string format_sci(double v);

/// FNV-1a 64-bit, used to fingerprint configuration content.
uint64_t fnv1a64(std::string_view bytes);

/// Parses "start:stop:step" (inclusive endpoints, step > 0).
std::vector<double> parse_range(const std::string& text);

}  // namespace smpd
