#include "smpd/format.hpp"

#include <cmath>
#include <cstdio>

#include "smpd/errors.hpp"

namespace smpd {

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<double> parse_range(const std::string& text) {
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    const int n = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra);
    if (n != 3) throw ValidationError("range must be start:stop:step, got '" + text + "'");
    if (!(step > 0)) throw ValidationError("range step must be positive");
    if (stop < start) throw ValidationError("range stop must be >= start");
    std::vector<double> out;
    const auto count = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

}  // namespace smpd
