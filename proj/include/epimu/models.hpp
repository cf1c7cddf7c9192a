#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "epimu/model.hpp"
#include "epimu/subdivision.hpp"

namespace epimu {

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;

/// Facets {(0,v_0),...,(n,v_n)} for every v in [0,n]^(n+1), in lexicographic order of v.
Complex input_complex(int n);

/// Decision assignments over [0,n] using at most k distinct values.
Complex sa_output_complex(int n, int k);

/// The k-set agreement task model: states are product facets I x O with O valid for I.
/// `plain` carries input atoms only; `fc` adds the decide atoms of O.
struct TaskModel {
    int n = 0;
    int k = 0;
    std::vector<Simplex> inputs;
    std::vector<Simplex> outputs;
    std::shared_ptr<const Frame> frame;
    SimplicialModel plain;
    SimplicialModel fc;

    /// The state I x O, if present.
    std::optional<StateId> find(const Simplex& input, const Simplex& output) const;
};

TaskModel task_model_sak(int n, int k);

/// A protocol model over subdivided input facets. State s is facets[s]; its frame is built from
/// the realized vertex sets and its labeling carries the base inputs only.
struct ProtocolModel {
    int n = 0;
    int m = 0;
    std::vector<SubdividedFacet> facets;
    std::shared_ptr<const Frame> frame;
    SimplicialModel model;
    /// Per interned vertex: the vertex's own input, and the inputs it has seen as a bitmask.
    std::vector<int> own_input;
    std::vector<std::uint32_t> seen_values;
    std::vector<ProcessSet> seen_processes;

    std::optional<StateId> find(const SubdividedFacet& s) const;

    ProtocolModel(int n, int m, std::vector<SubdividedFacet> facets);
};

/// Every X * gamma_1 * ... * gamma_m. Throws ResourceLimitError when the state count
/// (n+1)^(n+1) * Fubini(n+1)^m exceeds `limit`.
ProtocolModel protocol_model_iis(int n, int m, std::size_t limit = kDefaultStateLimit);

/// The states of p satisfying `keep`, with relations recomputed on the survivors.
ProtocolModel restrict_protocol(const ProtocolModel& p, const std::function<bool(const SubdividedFacet&)>& keep);

/// (n+1)^(n+1) * Fubini(n+1)^m, saturating at UINT64_MAX.
std::uint64_t iis_state_count(int n, int m);

/// Union of view_b(gamma_1) over b in view_a(gamma_2). Needs exactly two rounds.
ProcessSet carrier(ProcessId a, const SubdividedFacet& sigma);

/// Nonempty A with carrier_a = union of carrier_b over b in A, for every a in A.
std::vector<ProcessSet> contention_sets(const SubdividedFacet& sigma);

/// Two-round executions whose contention sets all have at most k members.
ProtocolModel k_concurrency_model(int n, int k, std::size_t limit = kDefaultStateLimit);

}  // namespace epimu
