/**
 * Lazywitness complex construction.
 *
 * From a p x q landmark-to-witness distance matrix D and the witness
 * relaxation order f, the edge birth matrix is
 *
 *     E(i, j) = max(0, min_k [ max(D(i, k), D(j, k)) - m_k ])
 *
 * where m_k is the f-th smallest entry of column k (m_k = 0 when f = 0).
 * Higher-dimensional simplices follow by flag expansion: a k-simplex enters
 * once all of its edges have, at the latest edge birth.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "nsc/errors.hpp"
#include "nsc/filtration.hpp"
#include "nsc/flag.hpp"

namespace nsc {

/// Symmetric p x p matrix of edge birth radii, zero diagonal.
using EdgeTimeMatrix = Eigen::MatrixXd;

/// Per-witness slack: f-th smallest entry of each column of D (all zeros for f = 0).
inline Eigen::VectorXd m_values(const DistanceMatrix& D, int f) {
    const int p = static_cast<int>(D.rows());
    const int q = static_cast<int>(D.cols());
    if (f < 0 || f > p) throw DataError("m_values: f must lie in [0, p]");

    Eigen::VectorXd m = Eigen::VectorXd::Zero(q);
    if (f == 0) return m;

    std::vector<double> column(p);
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < p; ++i) column[i] = D(i, j);
        std::nth_element(column.begin(), column.begin() + (f - 1), column.end());
        m[j] = column[f - 1];
    }
    return m;
}

inline EdgeTimeMatrix edge_time_matrix(const DistanceMatrix& D, int f) {
    const int p = static_cast<int>(D.rows());
    const int q = static_cast<int>(D.cols());
    if (p < 2) throw DataError("edge_time_matrix: need at least two landmarks");
    if (q == 0) throw DataError("edge_time_matrix: no witnesses");

    const Eigen::VectorXd m = m_values(D, f);
    EdgeTimeMatrix E = EdgeTimeMatrix::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (int k = 0; k < q; ++k) {
                const double t = std::max(D(i, k), D(j, k)) - m[k];
                if (t < best) best = t;
            }
            const double e = std::max(0.0, best);
            E(i, j) = e;
            E(j, i) = e;
        }
    }
    return E;
}

/**
 * Full filtration from an edge birth matrix: vertices at 0, edges at E(i,j),
 * flag simplices up to k_max at their latest edge birth. Simplices that are
 * not born by R_max are left out entirely.
 */
inline Filtration lazywitness_filtration(const EdgeTimeMatrix& E, int k_max,
                                         double R_max) {
    if (k_max < 1) throw DataError("lazywitness_filtration: k_max must be >= 1");
    const int p = static_cast<int>(E.rows());

    Filtration::EntryMap entries;
    for (int i = 0; i < p; ++i) entries.emplace(Simplex({i}), 0.0);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (E(i, j) <= R_max) entries.emplace(Simplex({i, j}), E(i, j));

    for_each_flag_simplex(E, R_max, k_max, [&](const std::vector<int>& verts, double birth) {
        entries.emplace(Simplex(verts), birth);
    });
    return Filtration(std::move(entries));
}

}  // namespace nsc
