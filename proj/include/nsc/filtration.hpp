/**
 * Filtered simplicial complexes: each simplex annotated with the radius at
 * which it enters the growing complex. Birth times are monotone under faces
 * and every vertex is present from radius zero.
 */

#pragma once

#include <map>
#include <stdexcept>

#include "nsc/simplex.hpp"

namespace nsc {

class Filtration {
public:
    using EntryMap = std::map<Simplex, double>;

    Filtration() = default;

    /// Validates monotonicity and that all referenced vertices are present at birth 0.
    explicit Filtration(EntryMap entries) : entries_(std::move(entries)) {
        for (const auto& [s, birth] : entries_) {
            if (birth < 0.0)
                throw std::invalid_argument("Filtration: negative birth radius");
            if (s.dimension() == 0 && birth != 0.0)
                throw std::invalid_argument("Filtration: vertex with nonzero birth");
            for (int v : s.vertices()) {
                auto it = entries_.find(Simplex({v}));
                if (it == entries_.end())
                    throw std::invalid_argument("Filtration: missing vertex entry");
            }
            for (const auto& f : faces(s)) {
                auto it = entries_.find(f);
                if (it == entries_.end())
                    throw std::invalid_argument("Filtration: missing face entry");
                if (it->second > birth)
                    throw std::invalid_argument("Filtration: birth not monotone under faces");
            }
        }
    }

    const EntryMap& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    bool contains(const Simplex& s) const { return entries_.contains(s); }

    double birth(const Simplex& s) const {
        auto it = entries_.find(s);
        if (it == entries_.end())
            throw std::out_of_range("Filtration: simplex not present");
        return it->second;
    }

    double max_birth() const {
        double m = 0.0;
        for (const auto& [s, b] : entries_) m = std::max(m, b);
        return m;
    }

    int max_dimension() const {
        int m = 0;
        for (const auto& [s, b] : entries_) m = std::max(m, s.dimension());
        return m;
    }

private:
    EntryMap entries_;
};

/// Subcomplex of all simplices born at or before R. Face-closed by monotonicity.
inline SimplicialComplex complex_at(const Filtration& f, double R) {
    if (R < 0.0) throw std::invalid_argument("complex_at: R must be non-negative");
    SimplexSet kept;
    int max_dim = 0;
    for (const auto& [s, birth] : f.entries()) {
        if (birth <= R) {
            max_dim = std::max(max_dim, s.dimension());
            kept.insert(s);
        }
    }
    return SimplicialComplex(std::move(kept), max_dim);
}

}  // namespace nsc
