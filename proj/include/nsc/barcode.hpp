/**
 * Recognition-oriented barcodes.
 *
 * In witness/Rips flag filtrations simplices never die, so every simplex
 * born by R_max owns one interval [birth, R_max]. The prime radius R* is the
 * lifecycle-weighted average of the interval midpoints:
 *
 *     R* = sum(l_i * M_i) / sum(l_i),   l_i = R_max - birth_i,
 *                                       M_i = (birth_i + R_max) / 2.
 *
 * Short bars therefore contribute little, which is what makes R* stable
 * against topological noise.
 */

#pragma once

#include <iostream>
#include <vector>

#include "nsc/filtration.hpp"

namespace nsc {

struct BarcodeInterval {
    Simplex simplex;
    double birth = 0.0;
    double end = 0.0;

    double length() const { return end - birth; }
    double median_radius() const { return 0.5 * (birth + end); }
};

/// One interval per simplex born by R_max; the end is pinned at R_max.
inline std::vector<BarcodeInterval> barcode(const Filtration& filtration, double R_max) {
    if (R_max <= 0.0) throw std::invalid_argument("barcode: R_max must be positive");
    std::vector<BarcodeInterval> out;
    out.reserve(filtration.size());
    for (const auto& [s, birth] : filtration.entries())
        if (birth <= R_max) out.push_back({s, birth, R_max});
    return out;
}

/**
 * Lifecycle-weighted barcode average. A fully degenerate barcode (every bar
 * of zero length) falls back to R_max; `degenerate` reports when that
 * happened.
 */
inline double prime_radius(const std::vector<BarcodeInterval>& intervals,
                           bool* degenerate = nullptr) {
    if (intervals.empty())
        throw std::invalid_argument("prime_radius: empty barcode");
    if (degenerate) *degenerate = false;

    double weight_sum = 0.0;
    double weighted = 0.0;
    double r_max = 0.0;
    for (const auto& bar : intervals) {
        const double l = bar.length();
        weight_sum += l;
        weighted += l * bar.median_radius();
        r_max = std::max(r_max, bar.end);
    }
    if (weight_sum <= 0.0) {
        std::cerr << "warning: degenerate barcode (all bar lengths zero); "
                     "falling back to R* = R_max\n";
        if (degenerate) *degenerate = true;
        return r_max;
    }
    return weighted / weight_sum;
}

}  // namespace nsc
