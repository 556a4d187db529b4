/**
 * Flag (clique) expansion of an edge-birth matrix.
 *
 * Given a symmetric matrix of edge birth radii, a k-simplex is present as
 * soon as all of its edges are, with birth equal to the latest edge birth.
 * The enumerator below visits every flag simplex of dimension 2..k_max whose
 * birth does not exceed a cutoff, without materializing anything — callers
 * accumulate barcode sums or collect simplices as they see fit. Adjacency is
 * kept in bitsets so common-neighbor queries are a handful of word ops.
 */

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace nsc {

class FlagAdjacency {
public:
    FlagAdjacency(const Eigen::MatrixXd& births, double cutoff)
        : n_(static_cast<int>(births.rows())),
          words_(static_cast<int>((n_ + 63) / 64)),
          bits_(static_cast<std::size_t>(n_) * words_, 0) {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (births(i, j) <= cutoff) {
                    set(i, j);
                    set(j, i);
                }
    }

    int size() const { return n_; }
    int words() const { return words_; }
    const std::uint64_t* row(int i) const { return bits_.data() + std::size_t(i) * words_; }

    bool adjacent(int i, int j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1u;
    }

    int degree(int i) const {
        int d = 0;
        for (int w = 0; w < words_; ++w) d += __builtin_popcountll(row(i)[w]);
        return d;
    }

    /// out = row(a) AND row(b), masked to indices strictly greater than b.
    void common_above(int a, int b, std::uint64_t* out) const {
        const std::uint64_t* ra = row(a);
        const std::uint64_t* rb = row(b);
        const int wb = b >> 6;
        for (int w = 0; w < words_; ++w) out[w] = ra[w] & rb[w];
        for (int w = 0; w < wb; ++w) out[w] = 0;
        const int shift = (b & 63) + 1;
        if (shift < 64)
            out[wb] &= ~std::uint64_t(0) << shift;
        else
            out[wb] = 0;
    }

    /// True when some vertex is adjacent to every vertex in verts.
    bool has_common_neighbor(const std::vector<int>& verts) const {
        for (int w = 0; w < words_; ++w) {
            std::uint64_t acc = ~std::uint64_t(0);
            for (int v : verts) acc &= row(v)[w];
            if (w == words_ - 1 && (n_ & 63))
                acc &= (~std::uint64_t(0)) >> (64 - (n_ & 63));
            // members of verts themselves may appear; mask them out
            for (int v : verts)
                if ((v >> 6) == w) acc &= ~(std::uint64_t(1) << (v & 63));
            if (acc) return true;
        }
        return false;
    }

private:
    void set(int i, int j) { bits_[std::size_t(i) * words_ + (j >> 6)] |= std::uint64_t(1) << (j & 63); }

    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

template <typename Visitor>
void flag_extend_(const Eigen::MatrixXd& births, const FlagAdjacency& adj, double cutoff,
                  int k_max, std::vector<int>& verts, double birth,
                  const std::uint64_t* cand, std::vector<std::uint64_t>& scratch,
                  int depth, Visitor&& visit) {
    const int words = adj.words();
    for (int w = 0; w < words; ++w) {
        std::uint64_t bitsw = cand[w];
        while (bitsw) {
            const int v = (w << 6) + __builtin_ctzll(bitsw);
            bitsw &= bitsw - 1;
            double b = birth;
            bool ok = true;
            for (int u : verts) {
                const double e = births(u, v);
                if (e > cutoff) { ok = false; break; }
                if (e > b) b = e;
            }
            if (!ok) continue;  // bitsets already guarantee adjacency; guard kept for clarity
            verts.push_back(v);
            visit(verts, b);
            if (static_cast<int>(verts.size()) <= k_max) {
                std::uint64_t* next = scratch.data() + std::size_t(depth) * words;
                const std::uint64_t* rv = adj.row(v);
                for (int ww = 0; ww < words; ++ww) next[ww] = cand[ww] & rv[ww];
                const int vw = v >> 6;
                for (int ww = 0; ww < vw; ++ww) next[ww] = 0;
                const int shift = (v & 63) + 1;
                if (shift < 64)
                    next[vw] &= ~std::uint64_t(0) << shift;
                else
                    next[vw] = 0;
                flag_extend_(births, adj, cutoff, k_max, verts, b, next, scratch, depth + 1,
                             visit);
            }
            verts.pop_back();
        }
    }
}

/**
 * Visit every flag simplex of dimension 2..k_max with birth <= cutoff.
 * visit(verts, birth) receives the vertex list in increasing order.
 */
template <typename Visitor>
void for_each_flag_simplex(const Eigen::MatrixXd& births, double cutoff, int k_max,
                           Visitor&& visit) {
    const int n = static_cast<int>(births.rows());
    if (k_max < 2 || n < 3) return;

    FlagAdjacency adj(births, cutoff);
    const int words = adj.words();
    std::vector<std::uint64_t> common(words);
    std::vector<std::uint64_t> scratch(std::size_t(std::max(1, k_max)) * words);
    std::vector<int> verts;
    verts.reserve(k_max + 1);

    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (births(a, b) > cutoff) continue;
            adj.common_above(a, b, common.data());
            verts = {a, b};
            flag_extend_(births, adj, cutoff, k_max, verts, births(a, b), common.data(),
                         scratch, 0, visit);
        }
    }
}

}  // namespace nsc
