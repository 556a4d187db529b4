#include <catch2/catch.hpp>

#include "nsc/rips.hpp"
#include "nsc/rng.hpp"
#include "nsc/sampling.hpp"
#include "nsc/witness.hpp"

using namespace nsc;

namespace {

Eigen::MatrixXd line_points(std::initializer_list<double> xs) {
    Eigen::MatrixXd pts(xs.size(), 1);
    int i = 0;
    for (double x : xs) pts(i++, 0) = x;
    return pts;
}

Eigen::MatrixXd random_points(Rng& rng, int n, int d, double span = 1.0) {
    Eigen::MatrixXd pts(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) pts(i, j) = span * uniform_real(rng);
    return pts;
}

}  // namespace

TEST_CASE("maxmin landmarks on a line") {
    // points {0, 1, 10}: whatever the first pick, 2 picks must include 0 and 10
    // when the first pick is the point at 0 the second maximizes min distance -> 10
    const auto pts = line_points({0.0, 1.0, 10.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto picks = maxmin_landmarks(pts, 2, seed);
        if (picks[0] == 0) CHECK(picks[1] == 2);
        if (picks[0] == 1) CHECK(picks[1] == 2);  // from 1, the farthest is 10
        if (picks[0] == 2) CHECK(picks[1] == 0);
    }
    CHECK_THROWS_AS(maxmin_landmarks(pts, 4, 0), DataError);
}

TEST_CASE("maxmin p = n is a permutation, p = 1 a single index") {
    Rng rng(3);
    const auto pts = random_points(rng, 9, 2);
    auto picks = maxmin_landmarks(pts, 9, 17);
    std::sort(picks.begin(), picks.end());
    for (int i = 0; i < 9; ++i) CHECK(picks[i] == i);
    CHECK(maxmin_landmarks(pts, 1, 5).size() == 1);
}

TEST_CASE("maxmin greedy property by brute force") {
    Rng rng(11);
    const auto pts = random_points(rng, 30, 3);
    const auto picks = maxmin_landmarks(pts, 12, 99);

    std::vector<bool> chosen(30, false);
    chosen[picks[0]] = true;
    for (std::size_t k = 1; k < picks.size(); ++k) {
        auto min_dist_to_chosen = [&](int i) {
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < 30; ++c)
                if (chosen[c])
                    best = std::min(best, (pts.row(i) - pts.row(c)).norm());
            return best;
        };
        const double picked = min_dist_to_chosen(picks[k]);
        for (int i = 0; i < 30; ++i)
            if (!chosen[i]) CHECK(picked >= min_dist_to_chosen(i) - 1e-12);
        chosen[picks[k]] = true;
    }
}

TEST_CASE("random landmarks determinism and injectivity") {
    Rng rng(4);
    const auto pts = random_points(rng, 20, 2);
    const auto a = random_landmarks(pts, 8, 123);
    const auto b = random_landmarks(pts, 8, 123);
    CHECK(a == b);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(random_landmarks(pts, 0, 7).empty());
    auto all = random_landmarks(pts, 20, 7);
    std::sort(all.begin(), all.end());
    for (int i = 0; i < 20; ++i) CHECK(all[i] == i);
}

TEST_CASE("landmark/witness split arithmetic") {
    Rng rng(5);
    {
        const auto pts = random_points(rng, 1000, 2);
        const auto split = split_landmark_witness(pts, 1.0, SamplingStrategy::Random, 1);
        CHECK(split.landmark_indices.size() == 500);
        CHECK(split.witness_indices.size() == 500);
    }
    {
        const auto pts = random_points(rng, 3, 2);
        const auto split = split_landmark_witness(pts, 0.0, SamplingStrategy::Random, 1);
        CHECK(split.landmark_indices.size() == 3);
        CHECK(split.witness_indices.empty());
    }
    {
        const auto pts = random_points(rng, 10, 2);
        const auto split = split_landmark_witness(pts, 4.0, SamplingStrategy::MaxMin, 1);
        CHECK(split.landmark_indices.size() == 2);  // floor(10/5) = 2
        CHECK(split.witness_indices.size() == 8);
    }
    const auto one = random_points(rng, 1, 2);
    CHECK_THROWS_AS(split_landmark_witness(one, 1.0, SamplingStrategy::Random, 1), DataError);

    // disjoint and exhaustive
    const auto pts = random_points(rng, 37, 2);
    const auto split = split_landmark_witness(pts, 2.0, SamplingStrategy::MaxMin, 9);
    std::vector<int> all = split.landmark_indices;
    all.insert(all.end(), split.witness_indices.begin(), split.witness_indices.end());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < 37; ++i) CHECK(all[i] == i);
}

TEST_CASE("distance matrix") {
    Eigen::MatrixXd pts(2, 2);
    pts << 0, 0, 3, 4;
    LandmarkSplit split{{0}, {1}};
    const auto D = distance_matrix(pts, split);
    REQUIRE(D.rows() == 1);
    REQUIRE(D.cols() == 1);
    CHECK(D(0, 0) == Approx(5.0));

    Eigen::MatrixXd same(2, 3);
    same << 1, 2, 3, 1, 2, 3;
    const auto D2 = distance_matrix(same, LandmarkSplit{{0}, {1}});
    CHECK(D2(0, 0) == 0.0);
}

TEST_CASE("m values") {
    Eigen::MatrixXd D(2, 1);
    D << 0.3, 0.1;
    CHECK(m_values(D, 0).isZero());
    CHECK(m_values(D, 1)(0) == Approx(0.1));
    CHECK(m_values(D, 2)(0) == Approx(0.3));
    CHECK_THROWS_AS(m_values(D, 3), DataError);
    CHECK_THROWS_AS(m_values(D, -1), DataError);
}

TEST_CASE("edge time matrix examples") {
    {
        Eigen::MatrixXd D(2, 2);
        D << 0.1, 0.5, 0.4, 0.2;
        const auto E = edge_time_matrix(D, 0);
        CHECK(E(0, 1) == Approx(0.4));  // min(max(.1,.4), max(.5,.2))
        CHECK(E(1, 0) == Approx(0.4));
        CHECK(E(0, 0) == 0.0);
    }
    {
        // one witness coincident with both landmarks
        Eigen::MatrixXd D(2, 1);
        D << 0.0, 0.0;
        CHECK(edge_time_matrix(D, 0)(0, 1) == 0.0);
    }
    {
        // f = 1 with a single witness: E = max(D(0,0), D(1,0)) - min(...)
        Eigen::MatrixXd D(2, 1);
        D << 0.7, 0.2;
        const auto E = edge_time_matrix(D, 1);
        CHECK(E(0, 1) == Approx(0.7 - 0.2));
    }
    Eigen::MatrixXd no_witness(2, 0);
    CHECK_THROWS_AS(edge_time_matrix(no_witness, 0), DataError);
}

TEST_CASE("edge time matrix matches witness rule 1 by brute force") {
    Rng rng(21);
    for (int f : {0, 1, 2}) {
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::MatrixXd D(10, 20);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 20; ++j) D(i, j) = uniform_real(rng);
            const auto E = edge_time_matrix(D, f);
            const auto m = m_values(D, f);

            for (double R = 0.0; R <= 1.0; R += 0.05) {
                for (int a = 0; a < 10; ++a)
                    for (int b = a + 1; b < 10; ++b) {
                        bool witnessed = false;
                        for (int j = 0; j < 20 && !witnessed; ++j)
                            witnessed = std::max(D(a, j), D(b, j)) <= R + m[j];
                        CHECK(witnessed == (E(a, b) <= R));
                    }
            }
        }
    }
}

TEST_CASE("edge time matrix is monotone non-increasing in f") {
    Rng rng(31);
    Eigen::MatrixXd D(8, 12);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 12; ++j) D(i, j) = uniform_real(rng);
    Eigen::MatrixXd prev = edge_time_matrix(D, 0);
    for (int f = 1; f <= 4; ++f) {
        const Eigen::MatrixXd cur = edge_time_matrix(D, f);
        CHECK(((prev - cur).array() >= -1e-12).all());
        prev = cur;
    }
}

TEST_CASE("lazywitness filtration flag rule") {
    {
        Eigen::MatrixXd E(3, 3);
        E << 0, 2, 2, 2, 0, 2, 2, 2, 0;
        const auto f = lazywitness_filtration(E, 2, 1.0);
        CHECK(f.size() == 3);  // all edges born past R_max: vertices only
    }
    {
        Eigen::MatrixXd E(3, 3);
        E << 0.0, 0.1, 0.2, 0.1, 0.0, 0.3, 0.2, 0.3, 0.0;
        const auto f = lazywitness_filtration(E, 2, 1.0);
        CHECK(f.birth(Simplex({0, 1, 2})) == Approx(0.3));  // max of edge births
        CHECK(f.birth(Simplex({0})) == 0.0);
    }
    {
        // path graph: no 2-simplex
        Eigen::MatrixXd E(3, 3);
        E << 0.0, 0.1, 9.0, 0.1, 0.0, 0.2, 9.0, 0.2, 0.0;
        const auto f = lazywitness_filtration(E, 2, 1.0);
        CHECK_FALSE(f.contains(Simplex({0, 1, 2})));
        CHECK(f.contains(Simplex({0, 1})));
        CHECK(f.contains(Simplex({1, 2})));
    }
}

TEST_CASE("flag property on random lazywitness complexes") {
    Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd D(12, 18);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 18; ++j) D(i, j) = uniform_real(rng);
        const auto E = edge_time_matrix(D, 1);
        const auto f = lazywitness_filtration(E, 3, 0.6);

        for (const auto& [s, birth] : f.entries()) {
            if (s.dimension() < 2) continue;
            const auto& v = s.vertices();
            double max_edge = 0.0;
            for (std::size_t a = 0; a < v.size(); ++a)
                for (std::size_t b = a + 1; b < v.size(); ++b) {
                    CHECK(f.contains(Simplex({v[a], v[b]})));
                    max_edge = std::max(max_edge, E(v[a], v[b]));
                }
            CHECK(birth == Approx(max_edge));
        }

        // subcomplex nestedness by construction
        const auto low = complex_at(f, 0.25);
        const auto high = complex_at(f, 0.55);
        for (const auto& s : low.simplices()) CHECK(high.contains(s));
    }
}

TEST_CASE("rips filtration") {
    {
        Eigen::MatrixXd pts(2, 2);
        pts << 0, 0, 10, 0;
        const auto f = rips_filtration(pts, 2, 100.0, BallConvention::IntersectingBalls);
        CHECK(f.birth(Simplex({0, 1})) == Approx(5.0));
        const auto g = rips_filtration(pts, 2, 100.0, BallConvention::Scale);
        CHECK(g.birth(Simplex({0, 1})) == Approx(10.0));
    }
    {
        Eigen::MatrixXd one(1, 3);
        one << 1, 2, 3;
        const auto f = rips_filtration(one, 2, 1.0);
        CHECK(f.size() == 1);
    }
    {
        // equilateral triangle, side s: 2-simplex at s/2 under intersecting balls
        const double s = 2.0;
        Eigen::MatrixXd pts(3, 2);
        pts << 0, 0, s, 0, s / 2, s * std::sqrt(3.0) / 2;
        const auto f = rips_filtration(pts, 2, 10.0);
        CHECK(f.birth(Simplex({0, 1, 2})) == Approx(s / 2));
    }
}
