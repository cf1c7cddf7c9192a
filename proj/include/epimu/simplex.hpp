#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "epimu/process_set.hpp"
#include "epimu/value.hpp"

namespace epimu {

/// A colored vertex (color, value).
struct Vertex {
    ProcessId color = 0;
    Value value;

    friend std::strong_ordering operator<=>(const Vertex& x, const Vertex& y)
    {
        if (auto c = x.color <=> y.color; c != 0)
            return c;
        return x.value <=> y.value;
    }
    friend bool operator==(const Vertex& x, const Vertex& y) { return (x <=> y) == 0; }

    std::size_t hash() const;
    std::string to_string() const;
};

struct VertexHash {
    std::size_t operator()(const Vertex& v) const { return v.hash(); }
};

/// A set of vertexes with pairwise distinct colors, kept sorted by color.
class Simplex {
public:
    Simplex() = default;
    /// Throws PreconditionError if two vertexes share a color.
    explicit Simplex(std::vector<Vertex> vertexes);

    std::span<const Vertex> vertexes() const { return vertexes_; }
    std::size_t size() const { return vertexes_.size(); }
    bool empty() const { return vertexes_.empty(); }
    int dimension() const { return static_cast<int>(vertexes_.size()) - 1; }

    /// The vertex of color a, or nullptr.
    const Vertex* find(ProcessId a) const;
    bool contains(const Vertex& v) const;
    bool is_face_of(const Simplex& other) const;

    std::size_t hash() const { return hash_; }
    std::string to_string() const;

    friend std::strong_ordering operator<=>(const Simplex& x, const Simplex& y)
    {
        return std::lexicographical_compare_three_way(
            x.vertexes_.begin(), x.vertexes_.end(), y.vertexes_.begin(), y.vertexes_.end());
    }
    friend bool operator==(const Simplex& x, const Simplex& y)
    {
        return x.hash_ == y.hash_ && x.vertexes_ == y.vertexes_;
    }

private:
    std::vector<Vertex> vertexes_;
    std::size_t hash_ = 0;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

/// Colors of the vertexes of s.
ProcessSet chi(const Simplex& s);

/// The value v with (a, v) in s; throws ColorAbsentError when a is not a color of s.
const Value& view_of(ProcessId a, const Simplex& s);

/// All 2^(dim+1) faces of s, including the empty simplex and s itself.
std::vector<Simplex> faces(const Simplex& s);

Simplex intersection(const Simplex& x, const Simplex& y);

/// A chromatic simplicial complex over the colors [0, n], represented by its facets.
class Complex {
public:
    Complex() = default;
    /// Duplicates and simplexes that are faces of other given simplexes are dropped;
    /// the empty simplex is never stored.
    Complex(int n, std::vector<Simplex> simplexes);

    int n() const { return n_; }
    std::span<const Simplex> facets() const& { return facets_; }
    std::span<const Simplex> facets() const&& = delete;
    std::size_t num_facets() const { return facets_.size(); }

    bool is_facet(const Simplex& s) const { return facet_index_.contains(s); }
    /// Index of s among facets(), or -1.
    std::ptrdiff_t facet_index(const Simplex& s) const;
    /// True when s is a face of some facet (the empty simplex always is).
    bool contains(const Simplex& s) const;
    /// Every facet colors exactly [0, n].
    bool is_pure_chromatic() const;

    std::vector<Vertex> vertexes() const;

private:
    int n_ = 0;
    std::vector<Simplex> facets_;
    std::unordered_map<Simplex, std::size_t, SimplexHash> facet_index_;
};

/// Facets X x Y = {(a,(u,v)) | (a,u) in X, (a,v) in Y}; throws ColorMismatchError when n differs.
Complex cartesian_product(const Complex& c, const Complex& d);

using VertexMap = std::function<Vertex(const Vertex&)>;

/// True iff f preserves colors on V(c) and maps every facet of c into d.
bool is_simplicial_map(const VertexMap& f, const Complex& c, const Complex& d);

}  // namespace epimu
