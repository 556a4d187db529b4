/**
 * Point-to-simplex projection and metric distances.
 *
 * The projection chain is purely Euclidean: least-squares affine coordinates
 * (lambdas summing to one), gamma-extrapolated clamping, and face descent
 * when an affine projection falls outside the allowed box. The metric matrix
 * A enters only in the final quadratic form, so with A != identity the
 * reported value is the form evaluated at the Euclidean projection.
 *
 * ComplexDistanceEngine evaluates point-to-complex distances over the stored
 * maximal simplices. For identity metrics and complexes of dimension <= 2 it
 * uses a single pass over the closure instead of per-simplex recursion:
 *
 *   min( ||x - v||^2 over vertices,
 *        d(x, gamma-extended segment)^2 over closure edges,
 *        d(x, affine hull)^2 over triangles whose lambdas land in the box ).
 *
 * This equals the minimum of the per-simplex recursion because a rejected
 * triangle descends exactly to its (shared) edges, and any accepted face of
 * a larger affine hull can only report a smaller distance than faces it
 * contains. Vertex and edge terms prune with the bound
 * d^2 >= max_u ||x - v_u||^2 - reach_u^2, valid whenever the projection
 * lands inside the (extended) hull.
 */

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "nsc/errors.hpp"
#include "nsc/prime_complex.hpp"

namespace nsc {

// ------------------------------------------------------------------
// Metric
// ------------------------------------------------------------------

/// Symmetric positive semidefinite metric for the distance quadratic form.
class MetricMatrix {
public:
    static MetricMatrix identity(int dim) {
        MetricMatrix m;
        m.dim_ = dim;
        m.identity_ = true;
        return m;
    }

    explicit MetricMatrix(Eigen::MatrixXd A) : A_(std::move(A)) {
        if (A_.rows() != A_.cols())
            throw std::invalid_argument("MetricMatrix: matrix must be square");
        dim_ = static_cast<int>(A_.rows());
        const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
        if ((A_ - A_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
            throw std::invalid_argument("MetricMatrix: matrix must be symmetric");
        A_ = 0.5 * (A_ + A_.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9 * scale)
            throw std::invalid_argument("MetricMatrix: matrix must be positive semidefinite");
        identity_ = A_.isIdentity(1e-15);
    }

    int dim() const { return dim_; }
    bool is_identity() const { return identity_; }

    Eigen::MatrixXd matrix() const {
        return identity_ ? Eigen::MatrixXd::Identity(dim_, dim_) : A_;
    }

    /// r^T A r
    double quad(const Eigen::VectorXd& r) const {
        return identity_ ? r.squaredNorm() : r.dot(A_ * r);
    }

private:
    MetricMatrix() = default;
    Eigen::MatrixXd A_;
    int dim_ = 0;
    bool identity_ = false;
};

// ------------------------------------------------------------------
// Per-simplex projection (spec contract)
// ------------------------------------------------------------------

struct ProjectionResult {
    Eigen::VectorXd lambdas;   // barycentric weights, sum to 1
    Eigen::VectorXd position;  // x_p
    bool clamped = false;
};

/// Relative singularity threshold for the Gram system of a simplex.
constexpr double kDegenerateGramTol = 1e-10;

/**
 * Least-squares affine coordinates of x with respect to the simplex vertices
 * (one vertex per row): solve (B^T B) mu = B^T (x - v0) with
 * B = [v1 - v0, ..., vk - v0]; lambda_0 = 1 - sum(mu).
 * Throws NumericError for affinely dependent vertices.
 */
inline Eigen::VectorXd affine_lambdas(const Eigen::VectorXd& x,
                                      const Eigen::MatrixXd& vertices) {
    const int k = static_cast<int>(vertices.rows()) - 1;
    if (k < 0) throw std::invalid_argument("affine_lambdas: no vertices");
    Eigen::VectorXd lambdas(k + 1);
    if (k == 0) {
        lambdas[0] = 1.0;
        return lambdas;
    }

    Eigen::MatrixXd B(vertices.cols(), k);
    for (int i = 0; i < k; ++i)
        B.col(i) = (vertices.row(i + 1) - vertices.row(0)).transpose();
    const Eigen::MatrixXd G = B.transpose() * B;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
    lu.setThreshold(std::sqrt(kDegenerateGramTol));
    if (!lu.isInvertible()) throw NumericError("degenerate simplex");

    const Eigen::VectorXd rhs = B.transpose() * (x - vertices.row(0).transpose());
    const Eigen::VectorXd mu = lu.solve(rhs);
    lambdas[0] = 1.0 - mu.sum();
    lambdas.tail(k) = mu;
    return lambdas;
}

namespace detail {

inline Eigen::VectorXd position_from_lambdas(const Eigen::VectorXd& lambdas,
                                             const Eigen::MatrixXd& vertices) {
    Eigen::VectorXd pos = Eigen::VectorXd::Zero(vertices.cols());
    for (int i = 0; i < lambdas.size(); ++i)
        pos += lambdas[i] * vertices.row(i).transpose();
    return pos;
}

}  // namespace detail

/**
 * Gamma-extrapolated projection of x onto a simplex.
 *
 * 1-simplex: the scalar coordinate is clamped into [-gamma, 1 + gamma].
 * k >= 2: the affine projection is returned when every lambda lies in the
 * box, otherwise the nearest result over the (k-1)-faces, recursively.
 * Degenerate simplices fall through to their faces as well.
 */
inline ProjectionResult clamp_and_project(const Eigen::VectorXd& x,
                                          const Eigen::MatrixXd& vertices,
                                          double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("clamp_and_project: gamma must be >= 0");
    const int k = static_cast<int>(vertices.rows()) - 1;

    if (k == 0) {
        ProjectionResult pr;
        pr.lambdas = Eigen::VectorXd::Ones(1);
        pr.position = vertices.row(0).transpose();
        pr.clamped = false;
        return pr;
    }

    if (k == 1) {
        const Eigen::VectorXd e = (vertices.row(1) - vertices.row(0)).transpose();
        const double len2 = e.squaredNorm();
        ProjectionResult pr;
        pr.lambdas = Eigen::VectorXd(2);
        if (len2 <= 0.0) {  // coincident endpoints
            pr.lambdas << 1.0, 0.0;
            pr.position = vertices.row(0).transpose();
            pr.clamped = true;
            return pr;
        }
        const double t = (x - vertices.row(0).transpose()).dot(e) / len2;
        const double tc = std::clamp(t, -gamma, 1.0 + gamma);
        pr.lambdas << 1.0 - tc, tc;
        pr.position = vertices.row(0).transpose() + tc * e;
        pr.clamped = (tc != t);
        return pr;
    }

    bool degenerate = false;
    try {
        const Eigen::VectorXd lambdas = affine_lambdas(x, vertices);
        if ((lambdas.array() >= -gamma).all() && (lambdas.array() <= 1.0 + gamma).all()) {
            ProjectionResult pr;
            pr.lambdas = lambdas;
            pr.position = detail::position_from_lambdas(lambdas, vertices);
            pr.clamped = false;
            return pr;
        }
    } catch (const NumericError&) {
        degenerate = true;  // fall back to faces
    }
    (void)degenerate;

    ProjectionResult best;
    double best_d2 = std::numeric_limits<double>::infinity();
    int best_skip = -1;
    Eigen::MatrixXd face(k, vertices.cols());
    for (int skip = 0; skip <= k; ++skip) {
        int r = 0;
        for (int i = 0; i <= k; ++i)
            if (i != skip) face.row(r++) = vertices.row(i);
        ProjectionResult pr = clamp_and_project(x, face, gamma);
        const double d2 = (x - pr.position).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = std::move(pr);
            best_skip = skip;
        }
    }
    // re-embed the face lambdas with a zero at the skipped vertex
    Eigen::VectorXd lifted = Eigen::VectorXd::Zero(k + 1);
    int r = 0;
    for (int i = 0; i <= k; ++i)
        if (i != best_skip) lifted[i] = best.lambdas[r++];
    best.lambdas = std::move(lifted);
    best.clamped = true;
    return best;
}

/// Squared metric distance to the gamma-clamped projection.
inline std::pair<double, ProjectionResult> point_simplex_distance(
    const Eigen::VectorXd& x, const Eigen::MatrixXd& vertices, double gamma,
    const MetricMatrix& A) {
    if (A.dim() != x.size())
        throw std::invalid_argument("point_simplex_distance: metric dimension mismatch");
    ProjectionResult pr = clamp_and_project(x, vertices, gamma);
    const double d = A.quad(x - pr.position);
    return {d, std::move(pr)};
}

// ------------------------------------------------------------------
// Point-to-complex distances
// ------------------------------------------------------------------

class ComplexDistanceEngine {
public:
    struct Workspace {
        std::vector<double> dv2;    // vertex-to-query squared distances, block layout
        std::vector<double> beta;   // per-query running minimum
        std::vector<double> vmin;   // per-vertex min over the block (block-level prune)
        std::vector<double> xblock; // block queries, row-major contiguous
        std::vector<int> order;
    };

    explicit ComplexDistanceEngine(const PrimeComplex& pc) : pc_(&pc) {
        if (pc.empty() && pc.vertices.rows() == 0)
            throw DataError("empty class model");
        const int dims = static_cast<int>(pc.maximal_by_dim.size());
        fast_capable_ = (pc.max_dim() <= 2);

        // closure edges: every vertex pair inside any stored maximal simplex
        std::unordered_set<std::uint64_t> seen;
        auto add_edge = [&](std::uint32_t u, std::uint32_t v) {
            if (u > v) std::swap(u, v);
            const std::uint64_t key = (std::uint64_t(u) << 32) | v;
            if (seen.insert(key).second) {
                edges_.push_back(u);
                edges_.push_back(v);
            }
        };
        for (int k = 1; k < dims; ++k) {
            const auto& flat = pc.maximal_by_dim[k];
            const std::size_t width = k + 1;
            for (std::size_t o = 0; o + width <= flat.size(); o += width)
                for (std::size_t s = 0; s < width; ++s)
                    for (std::size_t t = s + 1; t < width; ++t)
                        add_edge(flat[o + s], flat[o + t]);
        }

        edge_len2_.reserve(edges_.size() / 2);
        edge_len_.reserve(edges_.size() / 2);
        for (std::size_t e = 0; e + 1 < edges_.size(); e += 2) {
            const double len2 =
                (pc.vertices.row(edges_[e]) - pc.vertices.row(edges_[e + 1])).squaredNorm();
            edge_len2_.push_back(len2);
            edge_len_.push_back(std::sqrt(len2));
        }

        if (dims > 2) {
            const auto& tris = pc.maximal_by_dim[2];
            tri_.reserve(tris.size() / 3);
            for (std::size_t o = 0; o + 3 <= tris.size(); o += 3) {
                TriData td;
                td.a = tris[o];
                td.b = tris[o + 1];
                td.c = tris[o + 2];
                const auto va = pc.vertices.row(td.a);
                td.g00 = (pc.vertices.row(td.b) - va).squaredNorm();
                td.g11 = (pc.vertices.row(td.c) - va).squaredNorm();
                td.g01 = (pc.vertices.row(td.b) - va).dot(pc.vertices.row(td.c) - va);
                td.det = td.g00 * td.g11 - td.g01 * td.g01;
                const double bc2 = (pc.vertices.row(td.b) - pc.vertices.row(td.c)).squaredNorm();
                td.maxlen2 = std::max({td.g00, td.g11, bc2});
                tri_.push_back(td);
            }
        }
    }

    const PrimeComplex& complex() const { return *pc_; }

    /// Exact min over stored maximal simplices of the per-simplex distance.
    double distance(const Eigen::VectorXd& x, double gamma, const MetricMatrix& A,
                    Workspace& ws) const {
        double out;
        distances(x.transpose(), gamma, A, ws, &out);
        return out;
    }

    /**
     * Batch distances, one query per row of X. The identity-metric path for
     * complexes of dimension <= 2 streams the triangle data once per block
     * of queries; queries are processed in lexicographic coordinate order so
     * blocks stay spatially tight and whole blocks can be pruned at once.
     */
    void distances(const Eigen::MatrixXd& X, double gamma, const MetricMatrix& A,
                   Workspace& ws, double* out) const {
        if (pc_->empty()) throw DataError("empty class model");
        const int n = static_cast<int>(X.rows());
        if (!(fast_capable_ && A.is_identity())) {
            for (int i = 0; i < n; ++i) out[i] = generic(X.row(i).transpose(), gamma, A);
            return;
        }

        constexpr int kBlock = 64;
        ws.order.resize(n);
        for (int i = 0; i < n; ++i) ws.order[i] = i;

        // kd-style median splits: leaves become spatially tight blocks, which
        // is what makes the block-level prune gates effective
        struct Range {
            int lo, hi;
        };
        std::vector<Range> stack{{0, n}};
        while (!stack.empty()) {
            const Range r = stack.back();
            stack.pop_back();
            if (r.hi - r.lo <= kBlock) continue;
            int axis = 0;
            double best_span = -1.0;
            for (int j = 0; j < X.cols(); ++j) {
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (int i = r.lo; i < r.hi; ++i) {
                    const double v = X(ws.order[i], j);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                if (hi - lo > best_span) {
                    best_span = hi - lo;
                    axis = j;
                }
            }
            const int mid = r.lo + (r.hi - r.lo) / 2;
            std::nth_element(ws.order.begin() + r.lo, ws.order.begin() + mid,
                             ws.order.begin() + r.hi, [&](int a, int b) {
                                 const double va = X(a, axis), vb = X(b, axis);
                                 return va != vb ? va < vb : a < b;
                             });
            stack.push_back({r.lo, mid});
            stack.push_back({mid, r.hi});
        }

        for (int start = 0; start < n; start += kBlock) {
            const int B = std::min(kBlock, n - start);
            fast_identity_block(X, ws.order.data() + start, B, gamma, ws, out);
        }
    }

private:
    struct TriData {
        std::uint32_t a, b, c;
        double g00, g01, g11, det;
        double maxlen2;
    };

    /**
     * Closure pass over one block of queries.
     *
     * Prune bounds: an accepted (in-box) affine projection is an orthogonal
     * foot y with ||y - v_u|| <= reach, so d^2 >= dv_u^2 - reach^2 for every
     * vertex u of the simplex. A whole block is skipped when even the
     * per-vertex minima over the block cannot beat the block's worst beta:
     * max_u(min_q dv2[u][q]) - reach^2 >= max_q beta[q] implies the per-pair
     * bound for every pair, because min_q dv2 <= dv2[q] pointwise. At
     * gamma > 0 clamped edge candidates land outside the hull where
     * orthogonality fails; the linear triangle-inequality bound covers them.
     */
    void fast_identity_block(const Eigen::MatrixXd& X, const int* idx, int B,
                             double gamma, Workspace& ws, double* out) const {
        const auto& V = pc_->vertices;
        const int p = static_cast<int>(V.rows());
        const int d = static_cast<int>(V.cols());

        ws.xblock.resize(std::size_t(B) * d);
        for (int q = 0; q < B; ++q)
            for (int t = 0; t < d; ++t) ws.xblock[std::size_t(q) * d + t] = X(idx[q], t);

        ws.dv2.resize(std::size_t(p) * B);
        ws.beta.assign(B, std::numeric_limits<double>::infinity());
        ws.vmin.resize(p);
        for (int v = 0; v < p; ++v) {
            double vmin = std::numeric_limits<double>::infinity();
            double* row = ws.dv2.data() + std::size_t(v) * B;
            for (int q = 0; q < B; ++q) {
                double d2 = 0.0;
                const double* xq = ws.xblock.data() + std::size_t(q) * d;
                for (int t = 0; t < d; ++t) {
                    const double diff = xq[t] - V(v, t);
                    d2 += diff * diff;
                }
                row[q] = d2;
                if (d2 < ws.beta[q]) ws.beta[q] = d2;
                if (d2 < vmin) vmin = d2;
            }
            ws.vmin[v] = vmin;
        }
        double beta_max = 0.0;
        for (int q = 0; q < B; ++q) beta_max = std::max(beta_max, ws.beta[q]);
        const double sqrt_beta_max = std::sqrt(beta_max);

        // Squared-distance identity: for any query x,
        //   (x - va) . (vb - va) = (dv2_a - dv2_b + |vb - va|^2) / 2,
        // so both passes run entirely off the dv2 table.
        const std::size_t ne = edge_len2_.size();
        for (std::size_t e = 0; e < ne; ++e) {
            const std::uint32_t a = edges_[2 * e], b = edges_[2 * e + 1];
            const double len2 = edge_len2_[e];
            if (len2 <= 0.0) continue;  // coincident endpoints: vertex pass covers it
            const double inv_len2 = 1.0 / len2;

            double block_gate;  // skip the block when max(vmin_a, vmin_b) >= gate
            if (gamma == 0.0) {
                block_gate = beta_max + len2;
            } else {
                const double r = (1.0 + gamma) * edge_len_[e] + sqrt_beta_max;
                block_gate = r * r;
            }
            if (std::max(ws.vmin[a], ws.vmin[b]) >= block_gate) continue;

            const double* da = ws.dv2.data() + std::size_t(a) * B;
            const double* db = ws.dv2.data() + std::size_t(b) * B;
            for (int q = 0; q < B; ++q) {
                const double dvmax2 = std::max(da[q], db[q]);
                if (gamma == 0.0) {
                    if (dvmax2 - len2 >= ws.beta[q]) continue;
                } else {
                    const double slack = std::sqrt(dvmax2) - (1.0 + gamma) * edge_len_[e];
                    if (slack > 0.0 && slack * slack >= ws.beta[q]) continue;
                }
                const double s = 0.5 * (da[q] - db[q] + len2);
                const double tc = std::clamp(s * inv_len2, -gamma, 1.0 + gamma);
                const double d2 = da[q] - tc * (2.0 * s - tc * len2);
                if (d2 < ws.beta[q]) ws.beta[q] = d2;
            }
        }

        const double tri_reach = (1.0 + 3.0 * gamma) * (1.0 + 3.0 * gamma);
        for (const TriData& td : tri_) {
            if (td.det <= kDegenerateGramTol * td.g00 * td.g11)
                continue;  // degenerate: its edges already participate
            const double gate = beta_max + tri_reach * td.maxlen2;
            const double m = std::max({ws.vmin[td.a], ws.vmin[td.b], ws.vmin[td.c]});
            if (m >= gate) continue;

            const double inv_det = 1.0 / td.det;
            const double* da = ws.dv2.data() + std::size_t(td.a) * B;
            const double* db = ws.dv2.data() + std::size_t(td.b) * B;
            const double* dc = ws.dv2.data() + std::size_t(td.c) * B;
            for (int q = 0; q < B; ++q) {
                const double dva = da[q];
                const double lb = std::max({dva, db[q], dc[q]}) - tri_reach * td.maxlen2;
                if (lb >= ws.beta[q]) continue;
                const double s0 = 0.5 * (dva - db[q] + td.g00);
                const double s1 = 0.5 * (dva - dc[q] + td.g11);
                const double mu1 = (td.g11 * s0 - td.g01 * s1) * inv_det;
                const double mu2 = (td.g00 * s1 - td.g01 * s0) * inv_det;
                const double lam0 = 1.0 - mu1 - mu2;
                if (mu1 < -gamma || mu2 < -gamma || lam0 < -gamma ||
                    mu1 > 1.0 + gamma || mu2 > 1.0 + gamma || lam0 > 1.0 + gamma)
                    continue;  // rejected: descends to edges, already covered
                const double d2 = std::max(0.0, dva - (mu1 * s0 + mu2 * s1));
                if (d2 < ws.beta[q]) ws.beta[q] = d2;
            }
        }

        for (int q = 0; q < B; ++q) out[idx[q]] = ws.beta[q];
    }

    double generic(const Eigen::VectorXd& x, double gamma, const MetricMatrix& A) const {
        double best = std::numeric_limits<double>::infinity();
        Eigen::MatrixXd verts;
        for (std::size_t k = 0; k < pc_->maximal_by_dim.size(); ++k) {
            const auto& flat = pc_->maximal_by_dim[k];
            const std::size_t width = k + 1;
            verts.resize(width, pc_->vertices.cols());
            for (std::size_t o = 0; o + width <= flat.size(); o += width) {
                for (std::size_t t = 0; t < width; ++t)
                    verts.row(t) = pc_->vertices.row(flat[o + t]);
                const ProjectionResult pr = clamp_and_project(x, verts, gamma);
                const double dist = A.quad(x - pr.position);
                if (dist < best) best = dist;
            }
        }
        return best;
    }

    const PrimeComplex* pc_;
    bool fast_capable_ = false;
    std::vector<std::uint32_t> edges_;
    std::vector<double> edge_len2_;
    std::vector<double> edge_len_;
    std::vector<TriData> tri_;
};

/// Minimum metric distance from x to the maximal simplices of a prime complex.
inline double point_complex_distance(const Eigen::VectorXd& x, const PrimeComplex& pc,
                                     double gamma, const MetricMatrix& A) {
    ComplexDistanceEngine engine(pc);
    ComplexDistanceEngine::Workspace ws;
    return engine.distance(x, gamma, A, ws);
}

}  // namespace nsc
