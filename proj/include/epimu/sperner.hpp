#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "epimu/subdivision.hpp"

namespace epimu {

/// The m-iterated chromatic subdivision of {(0,0),...,(n,n)} with interned vertexes.
struct SpernerComplex {
    int n = 0;
    int m = 0;
    std::vector<Vertex> vertexes;
    /// Minimal carrier face of each vertex: the base colors in its unfolded view.
    std::vector<ProcessSet> carriers;
    /// Each facet as vertex indexes ordered by color.
    std::vector<std::vector<std::size_t>> facets;
};

SpernerComplex sperner_complex(int n, int m);

/// A color per vertex index.
using Coloring = std::vector<int>;

bool is_sperner(const SpernerComplex& c, const Coloring& coloring);

/// Facets whose colors are exactly [0,n]. Throws NonSpernerColoringError unless every vertex
/// takes a color of its carrier.
std::size_t sperner_count(const SpernerComplex& c, const Coloring& coloring);

/// sperner_count over sperner_complex(n, m).
std::size_t sperner_odd_count(int n, int m, const Coloring& coloring);

/// Each vertex takes the least color of its carrier.
Coloring least_carrier_coloring(const SpernerComplex& c);

/// Each vertex takes its own process color, which always lies in its carrier.
Coloring own_color_coloring(const SpernerComplex& c);

/// Each vertex takes a uniform color of its carrier.
Coloring random_sperner_coloring(const SpernerComplex& c, std::mt19937_64& rng);

/// Every Sperner coloring; throws ResourceLimitError when there are more than `limit`.
std::vector<Coloring> all_sperner_colorings(const SpernerComplex& c, std::size_t limit);

}  // namespace epimu
