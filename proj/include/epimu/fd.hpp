#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epimu/kernels.hpp"
#include "epimu/models.hpp"
#include "epimu/morphism.hpp"

namespace epimu {

/// I_d = {(i,i) | i <= d} U {(i,d) | d < i <= n}.
Simplex corner_input(int n, int d);

/// F_d: the facets I_d * gamma_1 * ... * gamma_m with every round of tail form for d.
struct FdCollection {
    int d = 0;
    std::vector<SubdividedFacet> facets;
};

FdCollection build_fd(int n, int m, int d);

/// The facets of F_0, ..., F_min(k,n) as one protocol model.
ProtocolModel fd_union_model(int n, int m, int k);

struct BowtieEdge {
    StateId to;
    ProcessSet group;
    friend bool operator==(const BowtieEdge&, const BowtieEdge&) = default;
};

/// The labeling-independent part of the >< relation over the union of F_0..F_min(k,n) in p:
/// the levels, and every (tau, A) with sigma ~A tau, sigma != tau, A a subset of [0,|A|],
/// and levels d, e with max(d,e) = |A| and |d-e| <= 1.
class BowtieFrame {
public:
    /// Throws PreconditionError unless p holds every facet of F_0..F_min(k,n).
    BowtieFrame(std::shared_ptr<const ProtocolModel> p, int k);

    const ProtocolModel& protocol() const { return *p_; }
    const std::shared_ptr<const ProtocolModel>& protocol_ptr() const { return p_; }
    int k() const { return k_; }
    /// Members of the union ordered by level, then by facet.
    const std::vector<StateId>& nodes() const { return nodes_; }
    /// d with s in F_d, or -1.
    int level(StateId s) const { return level_.at(s); }
    StateId sigma0() const { return nodes_.front(); }
    /// Candidate edges of s ordered by tau's facet, then by A.
    const std::vector<BowtieEdge>& candidates(StateId s) const { return candidates_.at(s); }
    /// The groups A with A a subset of [0,|A|].
    const std::vector<ProcessSet>& groups() const { return groups_; }

private:
    std::shared_ptr<const ProtocolModel> p_;
    int k_;
    std::vector<StateId> nodes_;
    std::vector<int> level_;
    std::vector<std::vector<BowtieEdge>> candidates_;
    std::vector<ProcessSet> groups_;
};

/// The relation sigma >< _A tau in a decision-labeled protocol model: a candidate edge of the
/// frame whose ends both satisfy DEC_A. `labeled` must share the protocol's frame.
class BowtieGraph {
public:
    BowtieGraph(std::shared_ptr<const ProtocolModel> p, SimplicialModel labeled, int k);
    BowtieGraph(std::shared_ptr<const BowtieFrame> frame, SimplicialModel labeled);

    const BowtieFrame& frame() const { return *frame_; }
    const ProtocolModel& protocol() const { return frame_->protocol(); }
    const SimplicialModel& model() const { return labeled_; }
    int k() const { return frame_->k(); }
    const std::vector<StateId>& nodes() const { return frame_->nodes(); }
    int level(StateId s) const { return frame_->level(s); }
    StateId sigma0() const { return frame_->sigma0(); }

    bool bowtie(StateId s, StateId t, ProcessSet group) const;
    bool bowtie(const SubdividedFacet& s, const SubdividedFacet& t, ProcessSet group) const;
    /// Every (tau, A) with s >< _A tau, ordered by tau's facet, then by A.
    std::vector<BowtieEdge> edges(StateId s) const;
    /// Number of distinct tau with s >< _A tau for some A.
    std::size_t degree(StateId s) const;

    /// OFUN, VALID, AGREE_k, KNOW at s.
    bool ofun_at(StateId s) const { return ofun_.test(s); }
    bool valid_at(StateId s) const { return valid_.test(s); }
    bool agree_at(StateId s) const { return agree_.test(s); }
    bool know_at(StateId s) const { return know_.test(s); }
    bool model_valid() const { return valid_.all(); }
    /// s in F_d with 1 <= d <= k, VALID everywhere, and OFUN & VALID & AGREE_k & KNOW at s.
    bool degree_preconditions(StateId s) const;

private:
    std::shared_ptr<const BowtieFrame> frame_;
    SimplicialModel labeled_;
    /// DEC_A, aligned with frame().groups().
    std::vector<StateSet> dec_;
    StateSet ofun_, valid_, agree_, know_;

    const StateSet& dec_states(ProcessSet group) const;
};

/// degree(s), after checking degree_preconditions; throws PreconditionError otherwise.
std::size_t bowtie_degree(const BowtieGraph& g, StateId s);

struct PathStep {
    StateId state;
    /// The group crossed to reach this facet; none for sigma_0.
    std::optional<ProcessSet> via;
};

struct PathReport {
    enum class Mode { Contradiction, FormulaFailure, Boundary, MaxLength };
    Mode mode = Mode::Boundary;
    std::vector<PathStep> steps;
    /// For FormulaFailure: the names among OFUN, VALID, AGREE, KNOW failing at the last facet.
    std::vector<std::string> failing;
    /// Whether Phi_k holds at each step's facet.
    std::vector<bool> phi_holds;
    /// |F_0 U ... U F_k|; a pairwise-distinct path longer than this is impossible.
    std::size_t bound = 0;
};

std::string to_string(PathReport::Mode m);

/// Walks from sigma_0 along >< edges, always taking the least unvisited neighbor, and stops
/// at the first facet failing its required formulas (OFUN & VALID at sigma_0, plus AGREE_k and
/// KNOW elsewhere), at a facet with no unvisited neighbor, or after max_len facets (0: no cap).
PathReport witness_path(const BowtieGraph& g, std::size_t max_len = 0);

/// Degree statistics over many decision labelings of one protocol model.
struct DegreeSurvey {
    std::size_t labelings = 0;
    /// Facets meeting the degree preconditions, and how many of those had degree 0 or 2.
    std::size_t checked = 0;
    std::size_t zero = 0;
    std::size_t two = 0;
    /// Labelings with OFUN & VALID at sigma_0, and how many gave sigma_0 degree exactly 1.
    std::size_t sigma0_checked = 0;
    std::size_t sigma0_one = 0;
    /// Labelings whose >< graph has an odd number of odd-degree nodes.
    std::size_t parity_failures = 0;
    /// Labelings where sigma_0 has degree 1 but no other odd-degree node fails the preconditions.
    std::size_t unmatched_sigma0 = 0;

    bool degrees_zero_or_two() const { return zero + two == checked; }
};

/// Runs the degree checks on every labeling; the parallel variant splits labelings over threads.
DegreeSurvey survey_degrees(
    const std::shared_ptr<const BowtieFrame>& frame, const std::vector<DecisionMap>& labelings, Execution ex = Execution::Serial);

/// Every vertex of p decides an input it has seen, in all combinations; throws
/// ResourceLimitError when there are more than `limit`.
std::vector<DecisionMap> all_view_labelings(const ProtocolModel& p, std::size_t limit);

/// `count` labelings where each vertex decides a uniformly chosen input it has seen; sample i
/// uses a generator seeded from (seed, i).
std::vector<DecisionMap> random_view_labelings(const ProtocolModel& p, std::size_t count, std::uint64_t seed);

}  // namespace epimu
