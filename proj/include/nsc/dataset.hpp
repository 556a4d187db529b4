/**
 * Labeled point clouds: synthetic topological generators, CSV ingestion,
 * stratified splitting, min-max scaling and PCA.
 *
 * The synthetic families follow the usual two-class benchmarks: concentric
 * circles, interleaved spirals, interlocked circles in 3D (single and tiled)
 * and crossing 2-spheres in 4D. Base geometry is deterministic (equally
 * spaced parameters, Fibonacci lattice on spheres); the randomness is the
 * per-coordinate Gaussian noise of standard deviation noise_rho.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "nsc/errors.hpp"
#include "nsc/rng.hpp"

namespace nsc {

struct LabeledDataset {
    Eigen::MatrixXd points;  // n x d, one sample per row
    std::vector<int> labels;
    std::string name;

    int n() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }

    std::vector<int> class_labels() const {
        std::set<int> uniq(labels.begin(), labels.end());
        return {uniq.begin(), uniq.end()};
    }

    std::vector<int> class_indices(int label) const {
        std::vector<int> idx;
        for (int i = 0; i < n(); ++i)
            if (labels[i] == label) idx.push_back(i);
        return idx;
    }

    Eigen::MatrixXd class_points(int label) const {
        const auto idx = class_indices(label);
        Eigen::MatrixXd out(idx.size(), points.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = points.row(idx[i]);
        return out;
    }

    LabeledDataset subset(const std::vector<int>& idx) const {
        LabeledDataset out;
        out.points.resize(idx.size(), points.cols());
        out.labels.resize(idx.size());
        out.name = name;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            out.points.row(i) = points.row(idx[i]);
            out.labels[i] = labels[idx[i]];
        }
        return out;
    }
};

enum class DatasetKind {
    TwoCircles,        // D1
    TwoSpirals,        // D2
    CircleCrossCircle, // D3
    FourCircleCross,   // D4
    SphereCrossSphere  // D5
};

struct GeneratorSpec {
    DatasetKind kind = DatasetKind::TwoCircles;
    int n_per_class = 500;
    double noise_rho = 1.0;
    double scale = 1.0;  // multiplies all base geometry

    double radius_a = 10.0;     // circle/sphere radius (inner circle for D1)
    double radius_b = 20.0;     // D1 outer radius
    double separation = 10.0;   // center separation for the crossing pairs
    double tile_spacing = 40.0; // D4 tile offset
    double spiral_r0 = 5.0;
    double spiral_r1 = 40.0;
    double spiral_turns = 3.0 * M_PI;  // radians swept by each spiral

    std::uint64_t seed = 0;
};

inline const char* dataset_kind_name(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::TwoCircles: return "two_circles";
        case DatasetKind::TwoSpirals: return "two_spirals";
        case DatasetKind::CircleCrossCircle: return "circle_cross_circle";
        case DatasetKind::FourCircleCross: return "four_circle_cross";
        case DatasetKind::SphereCrossSphere: return "sphere_cross_sphere";
    }
    return "unknown";
}

/**
 * Per-kind defaults for the D1..D5 benchmarks: the usual noise levels plus
 * base geometry sized so that the noise produces genuinely overlapping
 * classes (nearest-neighbor error in the mid single digits rather than a
 * clean separation).
 */
inline GeneratorSpec default_generator_spec(DatasetKind kind) {
    GeneratorSpec spec;
    spec.kind = kind;
    switch (kind) {
        case DatasetKind::TwoCircles:
            spec.noise_rho = 1.0;
            spec.radius_a = 16.0;
            spec.radius_b = 20.0;
            break;
        case DatasetKind::TwoSpirals:
            spec.noise_rho = std::sqrt(3.5);
            spec.spiral_r0 = 26.0;
            spec.spiral_r1 = 40.0;
            spec.spiral_turns = 1.9 * M_PI;
            break;
        case DatasetKind::CircleCrossCircle:
            spec.noise_rho = std::sqrt(2.0);
            spec.radius_a = 8.0;
            spec.separation = 0.0;
            break;
        case DatasetKind::FourCircleCross:
            spec.noise_rho = std::sqrt(2.0);
            spec.radius_a = 8.0;
            spec.separation = 0.0;
            spec.tile_spacing = 72.0;
            break;
        case DatasetKind::SphereCrossSphere:
            spec.noise_rho = std::sqrt(1.5);
            spec.radius_a = 8.0;
            spec.separation = 0.0;
            break;
    }
    return spec;
}

namespace detail {

inline void fibonacci_sphere_point(int k, int n, double* out3) {
    const double z = 1.0 - 2.0 * (k + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = M_PI * (3.0 - std::sqrt(5.0)) * k;
    out3[0] = r * std::cos(phi);
    out3[1] = r * std::sin(phi);
    out3[2] = z;
}

}  // namespace detail

inline LabeledDataset generate(const GeneratorSpec& spec) {
    if (spec.n_per_class < 1) throw DataError("generate: n_per_class must be >= 1");
    if (spec.noise_rho < 0.0) throw DataError("generate: noise_rho must be >= 0");

    const int n = spec.n_per_class;
    const double s = spec.scale;
    int dim = 2;
    if (spec.kind == DatasetKind::CircleCrossCircle ||
        spec.kind == DatasetKind::FourCircleCross)
        dim = 3;
    if (spec.kind == DatasetKind::SphereCrossSphere) dim = 4;

    LabeledDataset ds;
    ds.name = dataset_kind_name(spec.kind);
    ds.points = Eigen::MatrixXd::Zero(2 * n, dim);
    ds.labels.resize(2 * n);

    auto circle3d = [&](int row, double cx, double cy, double cz, double radius,
                        double t, bool xz_plane) {
        if (xz_plane) {
            ds.points(row, 0) = cx + radius * std::cos(t);
            ds.points(row, 1) = cy;
            ds.points(row, 2) = cz + radius * std::sin(t);
        } else {
            ds.points(row, 0) = cx + radius * std::cos(t);
            ds.points(row, 1) = cy + radius * std::sin(t);
            ds.points(row, 2) = cz;
        }
    };

    switch (spec.kind) {
        case DatasetKind::TwoCircles:
            for (int c = 0; c < 2; ++c) {
                const double radius = s * (c == 0 ? spec.radius_a : spec.radius_b);
                for (int k = 0; k < n; ++k) {
                    const double t = 2.0 * M_PI * k / n;
                    const int row = c * n + k;
                    ds.points(row, 0) = radius * std::cos(t);
                    ds.points(row, 1) = radius * std::sin(t);
                }
            }
            break;

        case DatasetKind::TwoSpirals:
            for (int c = 0; c < 2; ++c) {
                const double offset = c * M_PI;
                for (int k = 0; k < n; ++k) {
                    const double u = (n > 1) ? double(k) / (n - 1) : 0.0;
                    const double radius = s * (spec.spiral_r0 + (spec.spiral_r1 - spec.spiral_r0) * u);
                    const double t = spec.spiral_turns * u + offset;
                    const int row = c * n + k;
                    ds.points(row, 0) = radius * std::cos(t);
                    ds.points(row, 1) = radius * std::sin(t);
                }
            }
            break;

        case DatasetKind::CircleCrossCircle:
            for (int c = 0; c < 2; ++c)
                for (int k = 0; k < n; ++k) {
                    const double t = 2.0 * M_PI * k / n;
                    const int row = c * n + k;
                    if (c == 0)
                        circle3d(row, 0.0, 0.0, 0.0, s * spec.radius_a, t, false);
                    else
                        circle3d(row, s * spec.separation, 0.0, 0.0, s * spec.radius_a, t, true);
                }
            break;

        case DatasetKind::FourCircleCross: {
            const double T = s * spec.tile_spacing;
            const double offsets[4][3] = {
                {0, 0, 0}, {T, 0, 0}, {0, T, 0}, {0, 0, T}};
            // pair m contributes its xy-circle to class m % 2 and its
            // xz-circle to the other class; each class owns four circles
            int written[2] = {0, 0};
            for (int m = 0; m < 4; ++m) {
                for (int half = 0; half < 2; ++half) {
                    const int cls = (half == 0) ? (m % 2) : 1 - (m % 2);
                    const int quota = n / 4 + ((m < n % 4) ? 1 : 0);
                    for (int k = 0; k < quota; ++k) {
                        const double t = 2.0 * M_PI * k / std::max(1, quota);
                        const int row = cls * n + written[cls]++;
                        const double cx = offsets[m][0] + (half == 1 ? s * spec.separation : 0.0);
                        circle3d(row, cx, offsets[m][1], offsets[m][2], s * spec.radius_a, t,
                                 half == 1);
                    }
                }
            }
            break;
        }

        case DatasetKind::SphereCrossSphere:
            for (int c = 0; c < 2; ++c)
                for (int k = 0; k < n; ++k) {
                    double q[3];
                    detail::fibonacci_sphere_point(k, n, q);
                    const int row = c * n + k;
                    if (c == 0) {
                        ds.points(row, 0) = s * spec.radius_a * q[0];
                        ds.points(row, 1) = s * spec.radius_a * q[1];
                        ds.points(row, 2) = s * spec.radius_a * q[2];
                    } else {
                        // second sphere spans coordinates {0, 1, 3}
                        ds.points(row, 0) = s * spec.separation + s * spec.radius_a * q[0];
                        ds.points(row, 1) = s * spec.radius_a * q[1];
                        ds.points(row, 3) = s * spec.radius_a * q[2];
                    }
                }
            break;
    }

    for (int c = 0; c < 2; ++c)
        for (int k = 0; k < n; ++k) ds.labels[c * n + k] = c;

    if (spec.noise_rho > 0.0) {
        Rng rng(spec.seed);
        NormalSampler normal;
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < dim; ++j)
                ds.points(i, j) += spec.noise_rho * normal(rng);
    }
    return ds;
}

// ------------------------------------------------------------------
// CSV ingestion
// ------------------------------------------------------------------

namespace detail {

inline bool parse_double(const std::string& field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r'))
        --end;
    if (begin == end) return false;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace detail

/**
 * Parse a numeric CSV: last column is the integer class label, the rest are
 * features. A single non-numeric first row is treated as a header.
 */
inline LabeledDataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::size_t expected_fields = 0;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_line(line);

        std::vector<double> values(fields.size());
        bool all_numeric = true;
        std::size_t bad_col = 0;
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (!detail::parse_double(fields[c], values[c])) {
                all_numeric = false;
                bad_col = c;
                break;
            }

        if (!all_numeric) {
            if (!first_data_seen && rows.empty())
                continue;  // header row
            throw DataError("load_csv: non-numeric value at row " + std::to_string(line_no) +
                            ", column " + std::to_string(bad_col + 1));
        }
        if (first_data_seen && fields.size() != expected_fields)
            throw DataError("load_csv: row " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(expected_fields));
        if (!first_data_seen) {
            expected_fields = fields.size();
            if (expected_fields < 2)
                throw DataError("load_csv: need at least one feature column plus a label");
            first_data_seen = true;
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw DataError("load_csv: no data rows in '" + path + "'");

    const int n = static_cast<int>(rows.size());
    const int d = static_cast<int>(expected_fields) - 1;
    LabeledDataset ds;
    ds.points.resize(n, d);
    ds.labels.resize(n);
    ds.name = path;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) ds.points(i, j) = rows[i][j];
        const double raw = rows[i][d];
        const int label = static_cast<int>(std::llround(raw));
        if (raw != double(label) || label < 0)
            throw DataError("load_csv: label in row " + std::to_string(i + 1) +
                            " is not a non-negative integer");
        ds.labels[i] = label;
    }
    return ds;
}

/// Inverse of load_csv: features then the integer label, full precision.
inline void save_csv(const LabeledDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("save_csv: cannot open '" + path + "'");
    out << std::setprecision(17);
    for (int j = 0; j < ds.dim(); ++j) out << "x" << j << ",";
    out << "label\n";
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = 0; j < ds.dim(); ++j) out << ds.points(i, j) << ",";
        out << ds.labels[i] << "\n";
    }
    if (!out) throw DataError("save_csv: write failed for '" + path + "'");
}

// ------------------------------------------------------------------
// Splitting, scaling, PCA
// ------------------------------------------------------------------

/**
 * Disjoint, exhaustive train/test split. Stratified keeps per-class
 * proportions (nearest rounding, at least one training sample per class).
 * Row order within each side follows the original indices.
 */
inline std::pair<LabeledDataset, LabeledDataset> train_test_split(
    const LabeledDataset& ds, double train_fraction, bool stratified,
    std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("train_test_split: fraction must lie in (0, 1)");

    Rng rng(seed);
    std::vector<int> train_idx, test_idx;

    auto take = [&](std::vector<int> idx, std::size_t n_train) {
        shuffle(idx, rng);
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_train ? train_idx : test_idx).push_back(idx[i]);
    };

    if (stratified) {
        for (int label : ds.class_labels()) {
            auto idx = ds.class_indices(label);
            if (idx.size() < 2)
                throw DataError("train_test_split: class of size 1 cannot be stratified");
            const auto n_c = static_cast<long>(idx.size());
            const long want = std::lround(train_fraction * n_c);
            take(std::move(idx), std::size_t(std::clamp(want, 1L, n_c - 1)));
        }
    } else {
        std::vector<int> idx(ds.n());
        std::iota(idx.begin(), idx.end(), 0);
        const long want = std::lround(train_fraction * ds.n());
        take(std::move(idx), std::size_t(std::clamp(want, 1L, long(ds.n()) - 1)));
    }

    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {ds.subset(train_idx), ds.subset(test_idx)};
}

/// Per-feature affine map fitted on one dataset, reapplicable to another.
struct MinMaxTransform {
    Eigen::RowVectorXd lo;
    Eigen::RowVectorXd span;  // 1 for constant features (which map to 0)

    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
        return (X.rowwise() - lo).array().rowwise() / span.array();
    }
};

inline std::pair<LabeledDataset, MinMaxTransform> minmax_scale(const LabeledDataset& ds) {
    if (ds.n() == 0) throw DataError("minmax_scale: empty dataset");
    MinMaxTransform t;
    t.lo = ds.points.colwise().minCoeff();
    Eigen::RowVectorXd hi = ds.points.colwise().maxCoeff();
    t.span = (hi - t.lo).cwiseMax(0.0);
    for (int j = 0; j < t.span.size(); ++j)
        if (t.span[j] <= 0.0) t.span[j] = 1.0;

    LabeledDataset scaled = ds;
    scaled.points = t.apply(ds.points);
    return {std::move(scaled), std::move(t)};
}

/// Centering + top principal directions, fitted on train data only.
struct PcaBasis {
    Eigen::RowVectorXd mean;
    Eigen::MatrixXd components;  // d x target_dim, unit columns

    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
        return (X.rowwise() - mean) * components;
    }
};

inline std::pair<LabeledDataset, PcaBasis> pca(const LabeledDataset& ds, int target_dim) {
    const int n = ds.n();
    const int d = ds.dim();
    if (target_dim < 1 || target_dim > std::min(n, d))
        throw DataError("pca: target_dim must lie in [1, min(n, d)]");

    PcaBasis basis;
    basis.mean = ds.points.colwise().mean();
    const Eigen::MatrixXd centered = ds.points.rowwise() - basis.mean;
    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / double(std::max(1, n - 1));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw NumericError("pca: eigendecomposition failed");

    // eigenvalues come out ascending; take the top target_dim, descending
    basis.components.resize(d, target_dim);
    for (int j = 0; j < target_dim; ++j) {
        Eigen::VectorXd v = es.eigenvectors().col(d - 1 - j);
        int arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0.0) v = -v;  // sign convention: dominant entry positive
        basis.components.col(j) = v;
    }

    LabeledDataset projected = ds;
    projected.points = basis.apply(ds.points);
    return {std::move(projected), std::move(basis)};
}

}  // namespace nsc
