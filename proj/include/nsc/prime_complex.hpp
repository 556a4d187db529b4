/**
 * The per-class classification model: landmark coordinates plus the maximal
 * simplices of the filtration frozen at the prime radius R*.
 *
 * Maximal simplices are stored per dimension in flat index arrays; dense
 * complexes (hundreds of thousands of triangles) stay cheap to hold and to
 * stream over.
 */

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nsc/barcode.hpp"
#include "nsc/errors.hpp"
#include "nsc/filtration.hpp"

namespace nsc {

struct PrimeComplex {
    int class_label = 0;
    Eigen::MatrixXd vertices;  // one landmark coordinate per row
    /// maximal_by_dim[k] holds (k+1)-tuples of row indices, flattened.
    std::vector<std::vector<std::uint32_t>> maximal_by_dim;
    double prime_radius = 0.0;

    bool empty() const {
        for (const auto& tuples : maximal_by_dim)
            if (!tuples.empty()) return false;
        return true;
    }

    int max_dim() const {
        for (int k = static_cast<int>(maximal_by_dim.size()) - 1; k >= 0; --k)
            if (!maximal_by_dim[k].empty()) return k;
        return -1;
    }

    std::size_t maximal_count() const {
        std::size_t total = 0;
        for (std::size_t k = 0; k < maximal_by_dim.size(); ++k)
            total += maximal_by_dim[k].size() / (k + 1);
        return total;
    }

    /// Materialize the stored maximal set (intended for tests and export).
    std::vector<Simplex> maximal_simplices() const {
        std::vector<Simplex> out;
        out.reserve(maximal_count());
        for (std::size_t k = 0; k < maximal_by_dim.size(); ++k) {
            const auto& flat = maximal_by_dim[k];
            const std::size_t width = k + 1;
            for (std::size_t o = 0; o + width <= flat.size(); o += width) {
                std::vector<int> verts(width);
                for (std::size_t t = 0; t < width; ++t)
                    verts[t] = static_cast<int>(flat[o + t]);
                out.emplace_back(std::move(verts));
            }
        }
        return out;
    }
};

/**
 * Barcode -> R* -> complex at R* -> maximal simplices, packaged with the
 * landmark coordinates. This is the reference (map-based) path; the fit
 * pipeline builds the same object without materializing the filtration.
 */
inline PrimeComplex select_prime_complex(const Filtration& filtration,
                                         const Eigen::MatrixXd& vertex_coordinates,
                                         double R_max, int class_label) {
    if (filtration.empty())
        throw DataError("select_prime_complex: empty filtration");

    const auto bars = barcode(filtration, R_max);
    const double r_star = prime_radius(bars);

    PrimeComplex pc;
    pc.class_label = class_label;
    pc.vertices = vertex_coordinates;
    pc.prime_radius = r_star;

    const SimplicialComplex complex = complex_at(filtration, r_star);
    pc.maximal_by_dim.assign(complex.max_dimension() + 1, {});
    for (const auto& s : maximal_simplices(complex)) {
        auto& flat = pc.maximal_by_dim[s.dimension()];
        for (int v : s.vertices()) flat.push_back(static_cast<std::uint32_t>(v));
    }
    return pc;
}

/**
 * Drop 2-simplices whose hull is exactly covered by smaller ones.
 *
 * A triangle T = {a,b,c} is removable when the complex has a vertex d,
 * adjacent to all of a, b, c, lying strictly inside conv(T): the three
 * sub-triangles {a,b,d}, {a,d,c}, {d,b,c} are then flag simplices of the
 * complex whose union is conv(T), so every point-to-complex distance is
 * unchanged. Strict interiority forces the sub-triangles to have strictly
 * smaller area, which makes the removal well-founded no matter the order.
 *
 * The interior condition requires d to be coplanar with T, so the pass only
 * fires on 2-dimensional data; it is inert (and skipped) elsewhere. On dense
 * planar complexes it shrinks the triangle count by orders of magnitude.
 */
inline void reduce_coverage(PrimeComplex& pc) {
    if (pc.vertices.cols() != 2) return;
    if (pc.maximal_by_dim.size() < 3 || pc.maximal_by_dim[2].empty()) return;

    const int p = static_cast<int>(pc.vertices.rows());
    const int words = (p + 63) / 64;

    // adjacency of the complex at R*: every edge is a face of some stored simplex
    std::vector<std::uint64_t> bits(std::size_t(p) * words, 0);
    auto link = [&](std::uint32_t u, std::uint32_t v) {
        bits[std::size_t(u) * words + (v >> 6)] |= std::uint64_t(1) << (v & 63);
        bits[std::size_t(v) * words + (u >> 6)] |= std::uint64_t(1) << (u & 63);
    };
    for (std::size_t k = 1; k < pc.maximal_by_dim.size(); ++k) {
        const auto& flat = pc.maximal_by_dim[k];
        const std::size_t width = k + 1;
        for (std::size_t o = 0; o + width <= flat.size(); o += width)
            for (std::size_t s = 0; s < width; ++s)
                for (std::size_t t = s + 1; t < width; ++t)
                    link(flat[o + s], flat[o + t]);
    }

    const auto& tris = pc.maximal_by_dim[2];
    std::vector<std::uint32_t> kept;
    kept.reserve(tris.size());
    std::vector<std::uint64_t> common(words);
    constexpr double margin = 1e-9;

    for (std::size_t o = 0; o + 3 <= tris.size(); o += 3) {
        const std::uint32_t a = tris[o], b = tris[o + 1], c = tris[o + 2];
        const double ax = pc.vertices(a, 0), ay = pc.vertices(a, 1);
        const double ux = pc.vertices(b, 0) - ax, uy = pc.vertices(b, 1) - ay;
        const double vx = pc.vertices(c, 0) - ax, vy = pc.vertices(c, 1) - ay;
        const double det = ux * vy - uy * vx;

        bool removable = false;
        if (std::abs(det) > 1e-30) {
            const std::uint64_t* ra = bits.data() + std::size_t(a) * words;
            const std::uint64_t* rb = bits.data() + std::size_t(b) * words;
            const std::uint64_t* rc = bits.data() + std::size_t(c) * words;
            for (int w = 0; w < words && !removable; ++w) {
                std::uint64_t acc = ra[w] & rb[w] & rc[w];
                while (acc) {
                    const std::uint32_t d = (w << 6) + __builtin_ctzll(acc);
                    acc &= acc - 1;
                    const double px = pc.vertices(d, 0) - ax;
                    const double py = pc.vertices(d, 1) - ay;
                    const double mu1 = (px * vy - py * vx) / det;   // weight of b
                    const double mu2 = (ux * py - uy * px) / det;   // weight of c
                    const double lam0 = 1.0 - mu1 - mu2;
                    if (mu1 > margin && mu2 > margin && lam0 > margin) {
                        removable = true;
                        break;
                    }
                }
            }
        }
        if (!removable) {
            kept.push_back(a);
            kept.push_back(b);
            kept.push_back(c);
        }
    }
    pc.maximal_by_dim[2] = std::move(kept);
}

}  // namespace nsc
