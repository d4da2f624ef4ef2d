#pragma once

// Small numeric helpers shared across the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace dsim {

// alpha^x evaluated as exp(x * log(alpha)) so that real powers are computed
// identically everywhere (and are bit-comparable across implementations).
inline double pow_scale(double base, double x) {
    if (!(base > 0.0)) throw std::domain_error("pow_scale: base must be positive");
    return std::exp(x * std::log(base));
}

// b^k by iterated multiplication; exact reproducibility matters more than speed here.
inline double pow_int(double b, long long k) {
    if (k < 0) return 1.0 / pow_int(b, -k);
    double r = 1.0;
    for (long long i = 0; i < k; ++i) r *= b;
    return r;
}

inline double mean(std::span<const double> v) {
    if (v.empty()) throw std::domain_error("mean: empty input");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::domain_error("median: empty input");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double rel_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

} // namespace dsim
