/**
 * Abstract simplices and simplicial complexes.
 *
 * A simplex is a sorted tuple of distinct vertex indices; a complex is a
 * face-closed finite set of simplices. Everything here is immutable after
 * construction and safe to share across threads.
 */

#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <stdexcept>
#include <vector>

#include "nsc/errors.hpp"

namespace nsc {

class Simplex {
public:
    Simplex() = default;

    /// Vertices may be given in any order; duplicates and negatives are rejected.
    explicit Simplex(std::vector<int> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.empty())
            throw std::invalid_argument("Simplex: needs at least one vertex");
        std::sort(vertices_.begin(), vertices_.end());
        if (vertices_.front() < 0)
            throw std::invalid_argument("Simplex: negative vertex index");
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw std::invalid_argument("Simplex: repeated vertex index");
    }

    Simplex(std::initializer_list<int> vertices)
        : Simplex(std::vector<int>(vertices)) {}

    const std::vector<int>& vertices() const { return vertices_; }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }

    bool contains_vertex(int v) const {
        return std::binary_search(vertices_.begin(), vertices_.end(), v);
    }

    /// True when every vertex of *this also belongs to other (improper faces included).
    bool is_face_of(const Simplex& other) const {
        return std::includes(other.vertices_.begin(), other.vertices_.end(),
                             vertices_.begin(), vertices_.end());
    }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;

private:
    std::vector<int> vertices_;
};

using SimplexSet = std::set<Simplex>;

/// The dim+1 facets obtained by deleting one vertex each. A vertex has none.
inline SimplexSet faces(const Simplex& s) {
    SimplexSet out;
    if (s.dimension() < 1) return out;
    const auto& v = s.vertices();
    for (std::size_t skip = 0; skip < v.size(); ++skip) {
        std::vector<int> face;
        face.reserve(v.size() - 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != skip) face.push_back(v[i]);
        out.insert(Simplex(std::move(face)));
    }
    return out;
}

/**
 * A face-closed collection of simplices with a dimension cap.
 *
 * Construct through close_under_faces(); the constructor verifies both
 * invariants and throws on violation.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    SimplicialComplex(SimplexSet simplices, int max_dimension)
        : simplices_(std::move(simplices)), max_dimension_(max_dimension) {
        for (const auto& s : simplices_) {
            if (s.dimension() > max_dimension_)
                throw std::invalid_argument("SimplicialComplex: simplex exceeds max_dimension");
            for (const auto& f : faces(s))
                if (!simplices_.contains(f))
                    throw std::invalid_argument("SimplicialComplex: not face-closed");
        }
    }

    const SimplexSet& simplices() const { return simplices_; }
    int max_dimension() const { return max_dimension_; }
    bool contains(const Simplex& s) const { return simplices_.contains(s); }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.simplices_ == b.simplices_;
    }

private:
    SimplexSet simplices_;
    int max_dimension_ = 2;
};

/**
 * Smallest face-closed superset of the input.
 *
 * max_dimension defaults to the largest input dimension (so any input is
 * admissible); passing it explicitly rejects inputs above the cap.
 */
inline SimplicialComplex close_under_faces(const SimplexSet& simplices,
                                           int max_dimension = -1) {
    int max_dim_seen = 0;
    for (const auto& s : simplices) max_dim_seen = std::max(max_dim_seen, s.dimension());
    if (max_dimension < 0) max_dimension = max_dim_seen;

    SimplexSet closed;
    std::vector<Simplex> stack(simplices.begin(), simplices.end());
    while (!stack.empty()) {
        Simplex s = std::move(stack.back());
        stack.pop_back();
        if (!closed.insert(s).second) continue;
        for (auto& f : faces(s))
            if (!closed.contains(f)) stack.push_back(f);
    }
    return SimplicialComplex(std::move(closed), max_dimension);
}

/**
 * Members that are not a proper face of any other member.
 *
 * Marking the facets of every member is enough: in a face-closed complex,
 * any proper face is a facet of some member.
 */
inline SimplexSet maximal_simplices(const SimplicialComplex& k) {
    SimplexSet non_maximal;
    for (const auto& s : k.simplices())
        for (const auto& f : faces(s)) non_maximal.insert(f);

    SimplexSet out;
    for (const auto& s : k.simplices())
        if (!non_maximal.contains(s)) out.insert(s);
    return out;
}

}  // namespace nsc
