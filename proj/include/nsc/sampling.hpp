/**
 * Landmark / witness selection and the landmark-to-witness distance matrix.
 *
 * Point clouds are row-major Eigen matrices (one point per row). Both
 * samplers are deterministic for a fixed seed; max-min breaks ties by the
 * lowest index so runs reproduce bit for bit.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "nsc/errors.hpp"
#include "nsc/rng.hpp"

namespace nsc {

using PointMatrix = Eigen::MatrixXd;

/// p x q matrix of landmark-to-witness distances.
using DistanceMatrix = Eigen::MatrixXd;

enum class SamplingStrategy { MaxMin, Random };

/// Disjoint index sets into one source point cloud.
struct LandmarkSplit {
    std::vector<int> landmark_indices;
    std::vector<int> witness_indices;
};

/**
 * Max-min landmark sampling: a random first pick, then each next landmark
 * maximizes its minimal distance to the ones already chosen.
 */
inline std::vector<int> maxmin_landmarks(const PointMatrix& points, int p,
                                         std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (n == 0) throw DataError("maxmin_landmarks: empty point cloud");
    if (p < 1 || p > n) throw DataError("maxmin_landmarks: insufficient points");

    Rng rng(seed);
    std::vector<int> chosen;
    chosen.reserve(p);
    chosen.push_back(static_cast<int>(uniform_index(rng, n)));

    // min_dist[i] = distance from point i to the nearest chosen landmark
    Eigen::VectorXd min_dist =
        (points.rowwise() - points.row(chosen[0])).rowwise().norm();
    min_dist[chosen[0]] = -1.0;  // never re-chosen

    for (int k = 1; k < p; ++k) {
        int best = -1;
        double best_dist = -1.0;
        for (int i = 0; i < n; ++i) {
            if (min_dist[i] > best_dist) {  // strict: ties keep the lowest index
                best_dist = min_dist[i];
                best = i;
            }
        }
        chosen.push_back(best);
        Eigen::VectorXd d = (points.rowwise() - points.row(best)).rowwise().norm();
        min_dist = min_dist.cwiseMin(d);
        min_dist[best] = -1.0;
    }
    return chosen;
}

/// Uniform sample of p indices without replacement (partial Fisher-Yates).
inline std::vector<int> random_landmarks(const PointMatrix& points, int p,
                                         std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (p < 0 || p > n) throw DataError("random_landmarks: insufficient points");

    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    Rng rng(seed);
    for (int k = 0; k < p; ++k) {
        const std::size_t j = k + uniform_index(rng, n - k);
        std::swap(pool[k], pool[j]);
    }
    pool.resize(p);
    return pool;
}

/**
 * Split a class point cloud into landmarks and witnesses with ratio r:
 * p = max(2, floor(n / (r + 1))) landmarks, every remaining point a witness.
 */
inline LandmarkSplit split_landmark_witness(const PointMatrix& points, double ratio,
                                            SamplingStrategy strategy,
                                            std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (n < 2) throw DataError("split_landmark_witness: degenerate class (n < 2)");
    if (ratio < 0.0) throw DataError("split_landmark_witness: ratio must be >= 0");

    const int p = std::max(2, static_cast<int>(std::floor(n / (ratio + 1.0))));

    LandmarkSplit split;
    split.landmark_indices = (strategy == SamplingStrategy::MaxMin)
                                 ? maxmin_landmarks(points, p, seed)
                                 : random_landmarks(points, p, seed);

    std::vector<bool> is_landmark(n, false);
    for (int i : split.landmark_indices) is_landmark[i] = true;
    split.witness_indices.reserve(n - p);
    for (int i = 0; i < n; ++i)
        if (!is_landmark[i]) split.witness_indices.push_back(i);
    return split;
}

/// D(i, j) = Euclidean distance between landmark i and witness j.
inline DistanceMatrix distance_matrix(const PointMatrix& points,
                                      const LandmarkSplit& split) {
    const int p = static_cast<int>(split.landmark_indices.size());
    const int q = static_cast<int>(split.witness_indices.size());
    DistanceMatrix D(p, q);
    for (int i = 0; i < p; ++i) {
        const auto li = points.row(split.landmark_indices[i]);
        for (int j = 0; j < q; ++j)
            D(i, j) = (li - points.row(split.witness_indices[j])).norm();
    }
    return D;
}

}  // namespace nsc
