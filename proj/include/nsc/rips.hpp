/**
 * Rips filtration over a point cloud.
 *
 * Two ball conventions: "intersecting-balls" reads R as the common radius of
 * closed balls, so the edge {i, j} appears at d(i, j) / 2; "scale" is the
 * standard Rips parameterization with the edge at d(i, j). Higher simplices
 * follow by flag expansion either way.
 */

#pragma once

#include <Eigen/Dense>

#include "nsc/filtration.hpp"
#include "nsc/flag.hpp"
#include "nsc/sampling.hpp"

namespace nsc {

enum class BallConvention { IntersectingBalls, Scale };

inline Eigen::MatrixXd rips_edge_births(const PointMatrix& points,
                                        BallConvention convention) {
    const int n = static_cast<int>(points.rows());
    const double factor = (convention == BallConvention::IntersectingBalls) ? 0.5 : 1.0;
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double b = factor * (points.row(i) - points.row(j)).norm();
            E(i, j) = b;
            E(j, i) = b;
        }
    return E;
}

inline Filtration rips_filtration(const PointMatrix& points, int k_max, double R_max,
                                  BallConvention convention = BallConvention::IntersectingBalls) {
    if (points.rows() < 1) throw DataError("rips_filtration: empty point cloud");
    if (k_max < 1) throw DataError("rips_filtration: k_max must be >= 1");

    const Eigen::MatrixXd E = rips_edge_births(points, convention);
    const int n = static_cast<int>(points.rows());

    Filtration::EntryMap entries;
    for (int i = 0; i < n; ++i) entries.emplace(Simplex({i}), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (E(i, j) <= R_max) entries.emplace(Simplex({i, j}), E(i, j));

    for_each_flag_simplex(E, R_max, k_max, [&](const std::vector<int>& verts, double birth) {
        entries.emplace(Simplex(verts), birth);
    });
    return Filtration(std::move(entries));
}

}  // namespace nsc
