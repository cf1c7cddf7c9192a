#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epimu/formula.hpp"
#include "epimu/simplex.hpp"

namespace epimu {

using StateId = std::size_t;
using StateSet = boost::dynamic_bitset<std::uint64_t>;

/// Equivalence classes of a relation over states.
struct Partition {
    std::vector<std::size_t> class_of;
    std::vector<std::vector<StateId>> members;
};

/// The Kripke frame induced by a pure chromatic set of facets: states are facets and
/// X ~a Y iff X and Y share their vertex of color a. Immutable after construction;
/// the ~A class cache is filled lazily under a lock.
class Frame {
public:
    /// Facets keep the given order and must be distinct, each coloring exactly [0, n].
    Frame(int n, std::vector<Simplex> facets);
    explicit Frame(const Complex& complex);

    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;

    int n() const { return n_; }
    std::size_t num_states() const { return facets_.size(); }
    const Simplex& state(StateId s) const { return facets_.at(s); }
    std::span<const Simplex> states() const { return facets_; }
    std::optional<StateId> find(const Simplex& facet) const;
    Complex complex() const { return Complex(n_, facets_); }

    std::size_t num_vertexes() const { return vertexes_.size(); }
    const Vertex& vertex(std::size_t id) const { return vertexes_.at(id); }
    std::optional<std::size_t> find_vertex(const Vertex& v) const;
    /// Interned id of the color-a vertex of state s.
    std::size_t vertex_id(StateId s, ProcessId a) const { return vertex_of_[s * (n_ + 1) + a]; }
    std::span<const StateId> states_with_vertex(std::size_t vertex) const { return incidence_.at(vertex); }

    bool indist(ProcessId a, StateId x, StateId y) const { return vertex_id(x, a) == vertex_id(y, a); }
    /// X ~A Y iff X ~a Y for every a in A.
    bool related(ProcessSet group, StateId x, StateId y) const;
    /// Classes of ~A for a nonempty group; throws PreconditionError on the empty group.
    const Partition& classes(ProcessSet group) const;
    /// Unordered pairs x < y with x ~A y.
    std::vector<std::pair<StateId, StateId>> related_pairs(ProcessSet group) const;

private:
    int n_;
    std::vector<Simplex> facets_;
    std::unordered_map<Simplex, StateId, SimplexHash> index_;
    std::vector<Vertex> vertexes_;
    std::unordered_map<Vertex, std::size_t, VertexHash> vertex_index_;
    std::vector<std::size_t> vertex_of_;
    std::vector<std::vector<StateId>> incidence_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::uint32_t, std::unique_ptr<Partition>> class_cache_;
};

/// A Kripke model over a frame with an atomic-proposition labeling of states.
class SimplicialModel {
public:
    SimplicialModel(std::shared_ptr<const Frame> frame, std::vector<std::vector<AtomicProp>> labels);

    /// Def.-1 labeling: L(X) = {input_a=v | (a,v) in X}.
    static SimplicialModel with_input_labels(std::shared_ptr<const Frame> frame);

    const Frame& frame() const { return *frame_; }
    const std::shared_ptr<const Frame>& frame_ptr() const { return frame_; }
    int n() const { return frame_->n(); }
    std::size_t num_states() const { return frame_->num_states(); }

    std::span<const AtomicProp> labels(StateId s) const { return labels_.at(s); }
    bool holds(StateId s, const AtomicProp& p) const;
    /// States labeled with p; empty for atoms that never occur.
    const StateSet& atom_states(const AtomicProp& p) const;
    StateSet all_states() const { return StateSet(num_states()).set(); }
    StateSet no_states() const { return StateSet(num_states()); }

    /// Same frame, new labels.
    SimplicialModel relabeled(std::vector<std::vector<AtomicProp>> labels) const;

private:
    std::shared_ptr<const Frame> frame_;
    std::vector<std::vector<AtomicProp>> labels_;
    std::vector<std::pair<AtomicProp, StateSet>> atom_index_;
    StateSet empty_;
};

}  // namespace epimu
