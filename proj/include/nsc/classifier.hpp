/**
 * Nearest prime simplicial complex classification.
 *
 * fit() builds one prime complex per class label — landmark/witness split,
 * edge birth matrix, lifecycle-weighted R*, maximal simplices at R* — and
 * predict() assigns the label of the complex with the smallest projection
 * distance. The heavy per-class pipeline streams over flag simplices with
 * bitset adjacency instead of materializing a map-based filtration, which
 * matters once complexes reach millions of simplices; the result is
 * identical to the reference path in prime_complex.hpp.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nsc/dataset.hpp"
#include "nsc/errors.hpp"
#include "nsc/flag.hpp"
#include "nsc/prime_complex.hpp"
#include "nsc/projection.hpp"
#include "nsc/rips.hpp"
#include "nsc/rng.hpp"
#include "nsc/sampling.hpp"
#include "nsc/witness.hpp"

namespace nsc {

enum class ComplexKind { Lazywitness, Rips };
enum class MetricKind { Euclidean, Mahalanobis };

struct NSCConfig {
    ComplexKind complex_kind = ComplexKind::Lazywitness;
    int f = 2;
    double R_max = 0.5;
    double gamma = 0.0;
    int k_max = 2;
    double landmark_ratio = 1.0;
    SamplingStrategy sampling = SamplingStrategy::MaxMin;
    MetricKind metric = MetricKind::Euclidean;
    BallConvention ball_convention = BallConvention::IntersectingBalls;
    double rips_R = 30.0;
    std::uint64_t seed = 0;
    double ridge = 1e-6;
    /// Drop planar triangles whose hull is covered by smaller ones (exact).
    bool coverage_reduction = true;

    void validate() const {
        if (R_max <= 0.0) throw DataError("NSCConfig: R_max must be positive");
        if (gamma < 0.0) throw DataError("NSCConfig: gamma must be >= 0");
        if (k_max < 1) throw DataError("NSCConfig: k_max must be >= 1");
        if (landmark_ratio < 0.0) throw DataError("NSCConfig: landmark_ratio must be >= 0");
        if (f < 0) throw DataError("NSCConfig: f must be >= 0");
        if (rips_R <= 0.0) throw DataError("NSCConfig: rips_R must be positive");
        if (ridge < 0.0) throw DataError("NSCConfig: ridge must be >= 0");
    }
};

struct NSCModel {
    NSCConfig config;
    std::vector<PrimeComplex> classes;  // ascending class label
    Eigen::MatrixXd metric;             // empty means identity
    double gamma = 0.0;

    int dim() const {
        return classes.empty() ? 0 : static_cast<int>(classes[0].vertices.cols());
    }

    MetricMatrix metric_matrix() const {
        return metric.size() == 0 ? MetricMatrix::identity(dim()) : MetricMatrix(metric);
    }
};

/// A = (Sigma + ridge * trace(Sigma)/d * I)^-1 over the pooled training set.
inline MetricMatrix mahalanobis_metric(const Eigen::MatrixXd& train_points,
                                       double ridge = 1e-6) {
    const int n = static_cast<int>(train_points.rows());
    const int d = static_cast<int>(train_points.cols());
    if (n <= d)
        throw NumericError("ill-posed covariance: fewer samples than dimensions");

    const Eigen::RowVectorXd mean = train_points.colwise().mean();
    const Eigen::MatrixXd centered = train_points.rowwise() - mean;
    Eigen::MatrixXd sigma = (centered.transpose() * centered) / double(n - 1);
    const double trace = sigma.trace();
    if (trace <= 0.0) throw NumericError("ill-posed covariance: zero variance");

    sigma += (ridge * trace / d) * Eigen::MatrixXd::Identity(d, d);
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw NumericError("ill-posed covariance: not positive definite");
    Eigen::MatrixXd A = llt.solve(Eigen::MatrixXd::Identity(d, d));
    A = 0.5 * (A + A.transpose());
    return MetricMatrix(std::move(A));
}

/// Streaming observer for barcode intervals produced during fitting.
using BarcodeSink =
    std::function<void(int class_label, int dim, const std::vector<int>& verts,
                       double birth, double end)>;

namespace detail {

/// Shared streaming pipeline: edge births -> R* -> maximal simplices at R*.
inline PrimeComplex build_prime_complex(const Eigen::MatrixXd& landmark_coords,
                                        const Eigen::MatrixXd& E, double R_build,
                                        int k_max, int label, bool coverage,
                                        const BarcodeSink& sink = nullptr) {
    const int p = static_cast<int>(E.rows());

    // barcode sums: vertices live [0, R_build], edges and flag simplices
    // live [birth, R_build]
    double weight_sum = double(p) * R_build;
    double weighted = double(p) * R_build * (0.5 * R_build);
    if (sink) {
        std::vector<int> v(1);
        for (int i = 0; i < p; ++i) {
            v[0] = i;
            sink(label, 0, v, 0.0, R_build);
        }
    }
    std::vector<int> edge_verts(2);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const double b = E(i, j);
            if (b <= R_build) {
                weight_sum += R_build - b;
                weighted += (R_build - b) * 0.5 * (b + R_build);
                if (sink) {
                    edge_verts[0] = i;
                    edge_verts[1] = j;
                    sink(label, 1, edge_verts, b, R_build);
                }
            }
        }
    for_each_flag_simplex(E, R_build, k_max,
                          [&](const std::vector<int>& verts, double birth) {
                              weight_sum += R_build - birth;
                              weighted += (R_build - birth) * 0.5 * (birth + R_build);
                              if (sink)
                                  sink(label, static_cast<int>(verts.size()) - 1, verts,
                                       birth, R_build);
                          });
    const double r_star = weight_sum > 0.0 ? weighted / weight_sum : R_build;

    PrimeComplex pc;
    pc.class_label = label;
    pc.vertices = landmark_coords;
    pc.prime_radius = r_star;
    pc.maximal_by_dim.assign(std::min(k_max, p - 1) + 1, {});

    const FlagAdjacency adj(E, r_star);
    std::vector<int> pair(2);
    for (int i = 0; i < p; ++i)
        if (adj.degree(i) == 0) pc.maximal_by_dim[0].push_back(std::uint32_t(i));
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (E(i, j) <= r_star) {
                pair[0] = i;
                pair[1] = j;
                if (k_max == 1 || !adj.has_common_neighbor(pair)) {
                    pc.maximal_by_dim[1].push_back(std::uint32_t(i));
                    pc.maximal_by_dim[1].push_back(std::uint32_t(j));
                }
            }
    for_each_flag_simplex(E, r_star, k_max, [&](const std::vector<int>& verts, double) {
        const int dim = static_cast<int>(verts.size()) - 1;
        if (dim < k_max && adj.has_common_neighbor(verts)) return;
        auto& flat = pc.maximal_by_dim[dim];
        for (int v : verts) flat.push_back(std::uint32_t(v));
    });

    if (coverage) reduce_coverage(pc);
    return pc;
}

}  // namespace detail

/**
 * Fit one prime complex per class. Lazywitness mode splits each class into
 * landmarks and witnesses; Rips mode builds over all class samples with
 * rips_R as both the cutoff and the barcode end. Deterministic given the
 * config seed.
 */
inline NSCModel fit(const LabeledDataset& train, const NSCConfig& config,
                    const BarcodeSink& barcode_sink = nullptr) {
    config.validate();
    const auto labels = train.class_labels();
    if (labels.size() < 2) throw DataError("fit: need at least two classes");

    NSCModel model;
    model.config = config;
    model.gamma = config.gamma;

    for (int label : labels) {
        const Eigen::MatrixXd X = train.class_points(label);
        if (X.rows() < 2) throw DataError("fit: class with fewer than 2 samples");
        const std::uint64_t class_seed = mix_seed(config.seed, std::uint64_t(label));

        Eigen::MatrixXd landmark_coords;
        Eigen::MatrixXd E;
        double R_build;
        if (config.complex_kind == ComplexKind::Rips) {
            landmark_coords = X;
            E = rips_edge_births(X, config.ball_convention);
            R_build = config.rips_R;
        } else {
            const LandmarkSplit split =
                split_landmark_witness(X, config.landmark_ratio, config.sampling, class_seed);
            landmark_coords.resize(split.landmark_indices.size(), X.cols());
            for (std::size_t i = 0; i < split.landmark_indices.size(); ++i)
                landmark_coords.row(i) = X.row(split.landmark_indices[i]);
            if (split.witness_indices.empty()) {
                // no witnesses left (ratio 0): fall back to Rips over the landmarks
                E = rips_edge_births(landmark_coords, config.ball_convention);
            } else {
                const DistanceMatrix D = distance_matrix(X, split);
                E = edge_time_matrix(D, config.f);
            }
            R_build = config.R_max;
        }

        model.classes.push_back(detail::build_prime_complex(
            landmark_coords, E, R_build, config.k_max, label, config.coverage_reduction,
            barcode_sink));
    }

    if (config.metric == MetricKind::Mahalanobis) {
        model.metric = mahalanobis_metric(train.points, config.ridge).matrix();
    }
    return model;
}

struct Prediction {
    int label = 0;
    Eigen::VectorXd class_distances;  // aligned with model.classes
};

/**
 * Distance evaluator bound to a fitted model. Builds the per-class distance
 * engines once; keep one evaluator per thread (the workspace is reused
 * across calls).
 */
class NSCEvaluator {
public:
    explicit NSCEvaluator(const NSCModel& model)
        : model_(&model), A_(model.metric_matrix()) {
        if (model.classes.empty()) throw DataError("NSCEvaluator: empty model");
        engines_.reserve(model.classes.size());
        for (const auto& pc : model.classes) engines_.emplace_back(pc);
    }

    Prediction predict(const Eigen::VectorXd& x) {
        if (x.size() != model_->dim())
            throw DataError("predict: feature dimension mismatch");
        Prediction out;
        out.class_distances.resize(engines_.size());
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < engines_.size(); ++c) {
            const double d = engines_[c].distance(x, model_->gamma, A_, ws_);
            out.class_distances[c] = d;
            if (d < best) {  // strict: ties resolve to the lowest label
                best = d;
                out.label = model_->classes[c].class_label;
            }
        }
        return out;
    }

    std::vector<int> predict_labels(const Eigen::MatrixXd& X) {
        if (X.cols() != model_->dim())
            throw DataError("predict: feature dimension mismatch");
        const int n = static_cast<int>(X.rows());
        Eigen::MatrixXd dists(n, engines_.size());
        for (std::size_t c = 0; c < engines_.size(); ++c)
            engines_[c].distances(X, model_->gamma, A_, ws_, dists.col(c).data());

        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            int best_c = 0;
            for (std::size_t c = 1; c < engines_.size(); ++c)
                if (dists(i, c) < dists(i, best_c)) best_c = static_cast<int>(c);
            labels[i] = model_->classes[best_c].class_label;
        }
        return labels;
    }

private:
    const NSCModel* model_;
    MetricMatrix A_;
    std::vector<ComplexDistanceEngine> engines_;
    ComplexDistanceEngine::Workspace ws_;
};

/// One-shot convenience wrapper; build an NSCEvaluator for repeated queries.
inline Prediction predict(const NSCModel& model, const Eigen::VectorXd& x) {
    NSCEvaluator evaluator(model);
    return evaluator.predict(x);
}

/**
 * k-nearest-neighbor vote with deterministic ties: neighbor order breaks
 * distance ties by the lowest index, the vote breaks count ties by the
 * lowest label.
 */
inline int knn_predict(const Eigen::MatrixXd& train_points,
                       const std::vector<int>& train_labels, const Eigen::VectorXd& x,
                       int k) {
    const int n = static_cast<int>(train_points.rows());
    if (k < 1 || k > n) throw DataError("knn_predict: k out of range");

    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i)
        dist[i] = {(train_points.row(i).transpose() - x).squaredNorm(), i};
    std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
    std::sort(dist.begin(), dist.begin() + k);

    std::map<int, int> votes;
    for (int i = 0; i < k; ++i) votes[train_labels[dist[i].second]]++;
    int best_label = votes.begin()->first;
    int best_count = votes.begin()->second;
    for (const auto& [label, count] : votes)
        if (count > best_count) {  // map order already favors the lowest label
            best_count = count;
            best_label = label;
        }
    return best_label;
}

}  // namespace nsc
