#include <catch2/catch.hpp>

#include "nsc/classifier.hpp"
#include "nsc/dataset.hpp"
#include "nsc/stats.hpp"

using namespace nsc;

namespace {

/// Two tight, well separated clusters.
LabeledDataset separable_clusters(int per_class, std::uint64_t seed) {
    Rng rng(seed);
    NormalSampler normal;
    LabeledDataset ds;
    ds.points.resize(2 * per_class, 2);
    ds.labels.resize(2 * per_class);
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < per_class; ++i) {
            const int row = c * per_class + i;
            ds.points(row, 0) = 10.0 * c + 0.1 * normal(rng);
            ds.points(row, 1) = 0.1 * normal(rng);
            ds.labels[row] = c;
        }
    return ds;
}

}  // namespace

TEST_CASE("fit and predict on separable clusters") {
    const auto train = separable_clusters(40, 1);
    NSCConfig cfg;
    cfg.R_max = 0.5;
    cfg.seed = 7;
    const auto model = fit(train, cfg);
    REQUIRE(model.classes.size() == 2);
    CHECK(model.classes[0].class_label == 0);
    CHECK(model.classes[1].class_label == 1);

    NSCEvaluator evaluator(model);
    const auto labels = evaluator.predict_labels(train.points);
    for (int i = 0; i < train.n(); ++i) CHECK(labels[i] == train.labels[i]);

    // every landmark sits at distance zero from its own class complex
    for (const auto& pc : model.classes) {
        for (Eigen::Index v = 0; v < pc.vertices.rows(); ++v) {
            const auto pred = evaluator.predict(pc.vertices.row(v).transpose());
            CHECK(pred.label == pc.class_label);
            const Eigen::Index idx = pc.class_label == 0 ? 0 : 1;
            CHECK(pred.class_distances[idx] == Approx(0.0).margin(1e-18));
        }
    }
}

TEST_CASE("fit validates inputs") {
    LabeledDataset one_class;
    one_class.points = Eigen::MatrixXd::Random(6, 2);
    one_class.labels = {0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(fit(one_class, NSCConfig{}), DataError);

    LabeledDataset tiny = separable_clusters(3, 2);
    tiny.points.conservativeResize(4, 2);  // class 1 keeps a single sample
    tiny.labels = {0, 0, 0, 1};
    CHECK_THROWS_AS(fit(tiny, NSCConfig{}), DataError);

    NSCConfig bad;
    bad.R_max = 0.0;
    CHECK_THROWS_AS(fit(separable_clusters(5, 3), bad), DataError);
}

TEST_CASE("predict rejects dimension mismatch and breaks ties low") {
    const auto train = separable_clusters(10, 4);
    const auto model = fit(train, NSCConfig{});
    NSCEvaluator evaluator(model);
    Eigen::VectorXd wrong(3);
    wrong << 0, 0, 0;
    CHECK_THROWS_AS(evaluator.predict(wrong), DataError);

    // symmetric configuration: equidistant point goes to the lowest label
    LabeledDataset sym;
    sym.points.resize(4, 1);
    sym.points << 0.0, 1.0, 3.0, 4.0;
    sym.labels = {0, 0, 1, 1};
    NSCConfig cfg;
    cfg.R_max = 2.0;
    const auto m2 = fit(sym, cfg);
    Eigen::VectorXd mid(1);
    mid << 2.0;
    const auto pred = predict(m2, mid);
    CHECK(pred.class_distances[0] == Approx(pred.class_distances[1]));
    CHECK(pred.label == 0);
}

TEST_CASE("mahalanobis metric") {
    {
        // isotropic unit-variance data: A close to identity
        Rng rng(6);
        NormalSampler normal;
        Eigen::MatrixXd pts(4000, 2);
        for (int i = 0; i < pts.rows(); ++i)
            for (int j = 0; j < 2; ++j) pts(i, j) = normal(rng);
        const auto A = mahalanobis_metric(pts, 0.0).matrix();
        CHECK(A(0, 0) == Approx(1.0).epsilon(0.1));
        CHECK(A(1, 1) == Approx(1.0).epsilon(0.1));
        CHECK(A(0, 1) == Approx(0.0).margin(0.1));
    }
    {
        // axis variances (4, 1): A close to diag(1/4, 1)
        Rng rng(8);
        NormalSampler normal;
        Eigen::MatrixXd pts(8000, 2);
        for (int i = 0; i < pts.rows(); ++i) {
            pts(i, 0) = 2.0 * normal(rng);
            pts(i, 1) = normal(rng);
        }
        const auto A = mahalanobis_metric(pts, 0.0).matrix();
        CHECK(A(0, 0) == Approx(0.25).epsilon(0.1));
        CHECK(A(1, 1) == Approx(1.0).epsilon(0.1));
    }
    {
        // ridge keeps rank-deficient covariance invertible
        Eigen::MatrixXd pts(10, 2);
        for (int i = 0; i < 10; ++i) {
            pts(i, 0) = i;
            pts(i, 1) = 2.0 * i;  // perfectly correlated
        }
        CHECK_NOTHROW(mahalanobis_metric(pts, 1e-6));
    }
    Eigen::MatrixXd few(2, 3);
    few.setRandom();
    CHECK_THROWS_AS(mahalanobis_metric(few, 1e-6), NumericError);
}

TEST_CASE("knn predictions") {
    Eigen::MatrixXd train(5, 1);
    train << 0.0, 1.0, 2.0, 10.0, 11.0;
    const std::vector<int> labels{0, 0, 0, 1, 1};

    Eigen::VectorXd x(1);
    x << 1.0;
    CHECK(knn_predict(train, labels, x, 1) == 0);

    x << 9.5;
    CHECK(knn_predict(train, labels, x, 3) == 1);  // neighbors 10, 11, 2 -> majority 1

    x << 5.0;
    CHECK(knn_predict(train, labels, x, 5) == 0);  // global majority

    CHECK_THROWS_AS(knn_predict(train, labels, x, 0), DataError);
    CHECK_THROWS_AS(knn_predict(train, labels, x, 6), DataError);

    // k = 2 with one vote each: tie resolves to the lowest label
    Eigen::MatrixXd pair(2, 1);
    pair << 0.0, 2.0;
    const std::vector<int> pl{1, 0};
    x << 1.0;
    CHECK(knn_predict(pair, pl, x, 2) == 0);
}

TEST_CASE("argmin is invariant under metric scaling") {
    const auto train = separable_clusters(20, 9);
    NSCConfig cfg;
    cfg.metric = MetricKind::Mahalanobis;
    cfg.seed = 3;
    const auto model = fit(train, cfg);

    Rng rng(12);
    for (double c : {0.5, 2.0, 10.0}) {
        NSCModel scaled = model;
        scaled.metric = c * model.metric;
        NSCEvaluator base(model), mod(scaled);
        for (int t = 0; t < 25; ++t) {
            Eigen::VectorXd x(2);
            x << 12.0 * uniform_real(rng) - 1.0, 2.0 * uniform_real(rng) - 1.0;
            CHECK(base.predict(x).label == mod.predict(x).label);
        }
    }
}

TEST_CASE("fit is deterministic for a fixed seed") {
    const auto train = separable_clusters(30, 10);
    NSCConfig cfg;
    cfg.seed = 42;
    const auto m1 = fit(train, cfg);
    const auto m2 = fit(train, cfg);
    REQUIRE(m1.classes.size() == m2.classes.size());
    for (std::size_t c = 0; c < m1.classes.size(); ++c) {
        CHECK(m1.classes[c].prime_radius == m2.classes[c].prime_radius);
        CHECK(m1.classes[c].vertices == m2.classes[c].vertices);
        CHECK(m1.classes[c].maximal_by_dim == m2.classes[c].maximal_by_dim);
    }
}

TEST_CASE("rips mode fits small classes without witnesses") {
    LabeledDataset tiny;
    tiny.points.resize(8, 2);
    tiny.points << 0, 0, 1, 0, 1, 1, 0, 1, 10, 10, 11, 10, 11, 11, 10, 11;
    tiny.labels = {0, 0, 0, 0, 1, 1, 1, 1};

    NSCConfig cfg;
    cfg.complex_kind = ComplexKind::Rips;
    cfg.rips_R = 30.0;
    cfg.gamma = 1.0;
    const auto model = fit(tiny, cfg);
    NSCEvaluator evaluator(model);
    const auto labels = evaluator.predict_labels(tiny.points);
    for (int i = 0; i < tiny.n(); ++i) CHECK(labels[i] == tiny.labels[i]);

    // every class sample is a vertex in rips mode
    CHECK(model.classes[0].vertices.rows() == 4);
}

// ------------------------------------------------------------------
// paired t-test
// ------------------------------------------------------------------

TEST_CASE("paired t-test against pre-computed oracle values") {
    // frozen from an independent statistics oracle (computed before the build)
    {
        const std::vector<double> a{30, 31, 34, 37, 36};
        const std::vector<double> b{28, 30, 32, 35, 34};
        const auto r = paired_t_test(a, b);
        CHECK(r.t == Approx(9.0000000000).epsilon(1e-6));
        CHECK(r.p == Approx(0.0008438325).epsilon(1e-4));
    }
    {
        const std::vector<double> a{12.1, 14.3, 11.8, 13.0, 12.6, 15.2, 13.9, 12.2};
        const std::vector<double> b{11.4, 13.8, 12.5, 12.1, 12.0, 14.6, 13.1, 12.9};
        const auto r = paired_t_test(a, b);
        CHECK(r.t == Approx(1.4633585959).epsilon(1e-6));
        CHECK(r.p == Approx(0.1867738786).epsilon(1e-4));
    }
    {
        const std::vector<double> a{5.0, 4.2, 6.1, 5.8, 4.9, 5.5, 6.3, 5.1, 4.8, 5.9};
        const std::vector<double> b{5.4, 4.0, 6.0, 6.2, 5.1, 5.2, 6.5, 4.9, 5.0, 6.1};
        const auto r = paired_t_test(a, b);
        CHECK(r.t == Approx(-0.9830783046).epsilon(1e-6));
        CHECK(r.p == Approx(0.3512566382).epsilon(1e-4));
    }
}

TEST_CASE("paired t-test conventions and symmetry") {
    const std::vector<double> same{1, 2, 3};
    const auto id = paired_t_test(same, same);
    CHECK(id.t == 0.0);
    CHECK(id.p == 1.0);

    // zero-variance nonzero differences
    const auto degen = paired_t_test({2, 3, 4, 5}, {1, 2, 3, 4});
    CHECK(degen.p < 1e-12);
    CHECK(degen.t > 0);

    CHECK_THROWS_AS(paired_t_test({1, 2}, {1}), DataError);
    CHECK_THROWS_AS(paired_t_test({1}, {1}), DataError);

    // swapping the arguments negates t and preserves p
    const std::vector<double> a{3.0, 1.0, 4.0, 1.5, 9.2, 2.6};
    const std::vector<double> b{2.7, 1.8, 2.8, 1.8, 8.4, 3.0};
    const auto ab = paired_t_test(a, b);
    const auto ba = paired_t_test(b, a);
    CHECK(ab.t == Approx(-ba.t));
    CHECK(ab.p == Approx(ba.p));
}
