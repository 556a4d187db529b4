#include <catch2/catch.hpp>

#include <Eigen/Dense>

#include "nsc/filtration.hpp"
#include "nsc/rng.hpp"
#include "nsc/simplex.hpp"

using namespace nsc;

TEST_CASE("simplex invariants") {
    const Simplex s({2, 0, 1});
    CHECK(s.vertices() == std::vector<int>{0, 1, 2});
    CHECK(s.dimension() == 2);
    CHECK_THROWS_AS(Simplex({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Simplex({-1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Simplex(std::vector<int>{}), std::invalid_argument);
    CHECK(Simplex({3}).dimension() == 0);
    CHECK(Simplex({0, 1}).is_face_of(Simplex({0, 1, 2})));
    CHECK_FALSE(Simplex({0, 3}).is_face_of(Simplex({0, 1, 2})));
}

TEST_CASE("faces of a simplex") {
    CHECK(faces(Simplex({0, 1, 2})) ==
          SimplexSet{Simplex({0, 1}), Simplex({0, 2}), Simplex({1, 2})});
    CHECK(faces(Simplex({3, 7})) == SimplexSet{Simplex({3}), Simplex({7})});
    CHECK(faces(Simplex({5})).empty());
    CHECK(faces(Simplex({0, 1, 2, 3})).size() == 4);
}

TEST_CASE("close_under_faces") {
    const auto k = close_under_faces({Simplex({0, 1, 2})});
    CHECK(k.size() == 7);
    CHECK(k.contains(Simplex({0})));
    CHECK(k.contains(Simplex({0, 2})));
    CHECK(k.contains(Simplex({0, 1, 2})));

    CHECK(close_under_faces({}).empty());

    const auto two = close_under_faces({Simplex({0, 1}), Simplex({1, 2})});
    CHECK(two.size() == 5);
    CHECK_FALSE(two.contains(Simplex({0, 2})));
}

TEST_CASE("maximal_simplices") {
    const auto k1 = SimplicialComplex({Simplex({0}), Simplex({1}), Simplex({0, 1})}, 1);
    CHECK(maximal_simplices(k1) == SimplexSet{Simplex({0, 1})});

    const auto k2 = close_under_faces({Simplex({0, 1, 2}), Simplex({2, 3})});
    CHECK(maximal_simplices(k2) == SimplexSet{Simplex({0, 1, 2}), Simplex({2, 3})});

    const auto k3 = SimplicialComplex({Simplex({0}), Simplex({1})}, 0);
    CHECK(maximal_simplices(k3) == SimplexSet{Simplex({0}), Simplex({1})});
}

TEST_CASE("complex construction validates invariants") {
    CHECK_THROWS_AS(SimplicialComplex({Simplex({0, 1})}, 1), std::invalid_argument);
    CHECK_THROWS_AS(
        SimplicialComplex({Simplex({0}), Simplex({1}), Simplex({0, 1})}, 0),
        std::invalid_argument);
}

static SimplexSet random_simplex_set(Rng& rng, int n_verts, int count) {
    SimplexSet out;
    for (int i = 0; i < count; ++i) {
        const int dim = static_cast<int>(uniform_index(rng, 3));
        std::vector<int> verts;
        while (static_cast<int>(verts.size()) < dim + 1) {
            const int v = static_cast<int>(uniform_index(rng, n_verts));
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        }
        out.insert(Simplex(std::move(verts)));
    }
    return out;
}

TEST_CASE("closure and maximal interplay on random complexes") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const auto k = close_under_faces(random_simplex_set(rng, 8, 6));
        const auto maxes = maximal_simplices(k);

        // closure of the maximal set reconstructs the complex
        CHECK(close_under_faces(maxes) == k);

        // maximal-of-closure-of-maximal is idempotent
        CHECK(maximal_simplices(close_under_faces(maxes)) == maxes);

        // no maximal simplex is a face of another
        for (const auto& a : maxes)
            for (const auto& b : maxes)
                if (!(a == b)) CHECK_FALSE(a.is_face_of(b));
    }
}

TEST_CASE("filtration validation") {
    Filtration::EntryMap good{{Simplex({0}), 0.0},
                              {Simplex({1}), 0.0},
                              {Simplex({0, 1}), 0.3}};
    CHECK_NOTHROW(Filtration(good));

    // missing vertex
    Filtration::EntryMap missing{{Simplex({0}), 0.0}, {Simplex({0, 1}), 0.3}};
    CHECK_THROWS_AS(Filtration(missing), std::invalid_argument);

    // non-monotone births
    Filtration::EntryMap bad{{Simplex({0}), 0.0},
                             {Simplex({1}), 0.0},
                             {Simplex({2}), 0.0},
                             {Simplex({0, 1}), 0.5},
                             {Simplex({0, 2}), 0.1},
                             {Simplex({1, 2}), 0.1},
                             {Simplex({0, 1, 2}), 0.2}};
    CHECK_THROWS_AS(Filtration(bad), std::invalid_argument);
}

TEST_CASE("complex_at slices a filtration") {
    const Filtration f(Filtration::EntryMap{{Simplex({0}), 0.0},
                                            {Simplex({1}), 0.0},
                                            {Simplex({2}), 0.0},
                                            {Simplex({0, 1}), 0.2},
                                            {Simplex({1, 2}), 0.7}});
    CHECK(complex_at(f, 0.0).size() == 3);  // vertices only
    CHECK(complex_at(f, 0.2).size() == 4);
    CHECK(complex_at(f, f.max_birth()).size() == f.size());
    CHECK_THROWS_AS(complex_at(f, -0.1), std::invalid_argument);
}

TEST_CASE("nestedness of filtration slices") {
    Rng rng(7);
    Filtration::EntryMap entries;
    const int n = 6;
    for (int i = 0; i < n; ++i) entries.emplace(Simplex({i}), 0.0);
    Eigen::MatrixXd births(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double b = uniform_real(rng);
            entries.emplace(Simplex({i, j}), b);
            births(i, j) = births(j, i) = b;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const double b3 =
                    std::max(births(i, j), std::max(births(i, k), births(j, k)));
                entries.emplace(Simplex({i, j, k}), b3);
            }
    const Filtration f(std::move(entries));

    double prev_r = 0.0;
    SimplicialComplex prev = complex_at(f, 0.0);
    for (int step = 1; step <= 10; ++step) {
        const double r = prev_r + uniform_real(rng) * 0.2;
        const auto cur = complex_at(f, r);
        for (const auto& s : prev.simplices()) CHECK(cur.contains(s));
        prev = cur;
        prev_r = r;
    }
}
