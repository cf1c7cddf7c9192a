#pragma once

#include <map>
#include <vector>

#include "epimu/osp.hpp"
#include "epimu/simplex.hpp"

namespace epimu {

/// The facet {(a, view_a(X * gamma)) | a in [0,n]} of the standard chromatic subdivision of X,
/// where each view is the set of vertexes of X whose colors a sees in gamma.
/// Throws PreconditionError unless chi(X) = [0, gamma.n()].
Simplex subdivide_facet(const Simplex& base, const Osp& gamma);

/// X * gamma_1 * ... * gamma_m: the base facet, the round history, and the realized vertex set.
/// Equality and ordering use the symbolic name (base, history) only.
struct SubdividedFacet {
    Simplex base;
    std::vector<Osp> history;
    Simplex realized;

    std::string name() const;

    friend bool operator==(const SubdividedFacet& x, const SubdividedFacet& y)
    {
        return x.base == y.base && x.history == y.history;
    }
    friend std::strong_ordering operator<=>(const SubdividedFacet& x, const SubdividedFacet& y)
    {
        if (auto c = x.base <=> y.base; c != 0)
            return c;
        return std::lexicographical_compare_three_way(
            x.history.begin(), x.history.end(), y.history.begin(), y.history.end());
    }
};

/// Applies the rounds left to right; round i+1 subdivides the round-i facet, whose vertex
/// values are round-i views. The history must be nonempty.
SubdividedFacet iterated_subdivision(const Simplex& base, std::vector<Osp> history);

/// Every sequence of m rounds drawn from `rounds`, the last round varying fastest.
std::vector<std::vector<Osp>> round_histories(const std::vector<Osp>& rounds, int m);

/// The base-level contents of a (possibly nested) view: each process whose input is
/// transitively visible, with that input.
std::map<ProcessId, Value> unfold_view(const Value& view);

/// The tail-form facets adjacent to sigma across A = [0,d] \ {b}, computed from the histories
/// alone. When every round's last block over [0,d] is {b}, these are the facets with the same
/// history over every base Y with Y ~A X. Otherwise Y ranges over the bases agreeing with X on
/// [0,d], and the rounds are kept except the last round j whose last block is not {b}, which is
/// either kept or flipped.
/// sigma itself is included only when `include_self`.
/// Throws PreconditionError unless A = [0,d] \ {b} and every round has tail form for d.
std::vector<SubdividedFacet> incident_by_osp(
    const SubdividedFacet& sigma, ProcessSet group, int d, ProcessId b, bool include_self = false);

}  // namespace epimu
