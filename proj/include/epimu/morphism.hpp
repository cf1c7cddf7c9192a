#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epimu/kernels.hpp"
#include "epimu/models.hpp"

namespace epimu {

/// Per protocol vertex (by interned id): a decided value, or -1 for none.
using DecisionMap = std::vector<int>;

/// The color-a vertex (a, (input, decision)) of a task-model state.
struct TaskVertex {
    int input = 0;
    int decision = 0;
    friend bool operator==(const TaskVertex&, const TaskVertex&) = default;
};

/// A vertex map from a protocol model to a task model, one image per protocol vertex.
/// Vertexes with the same (color, view) are one interned vertex, so images are well defined.
class Morphism {
public:
    Morphism(std::shared_ptr<const ProtocolModel> source, std::shared_ptr<const TaskModel> target);

    /// Every vertex decides its own input, keeping its input component.
    static Morphism decide_own_input(std::shared_ptr<const ProtocolModel> source, std::shared_ptr<const TaskModel> target);
    /// Images (own input, decisions[v]) for every v; -1 entries stay unassigned.
    static Morphism from_decisions(
        std::shared_ptr<const ProtocolModel> source, std::shared_ptr<const TaskModel> target, const DecisionMap& decisions);

    const ProtocolModel& source() const { return *source_; }
    const TaskModel& target() const { return *target_; }

    void set(std::size_t vertex, TaskVertex image) { images_.at(vertex) = image; }
    const std::optional<TaskVertex>& image(std::size_t vertex) const { return images_.at(vertex); }
    bool is_total() const;
    DecisionMap decisions() const;

    /// The target state of the image of protocol state s, if every vertex is assigned and the
    /// image is a target state.
    std::optional<StateId> image_state(StateId s) const;

private:
    std::shared_ptr<const ProtocolModel> source_;
    std::shared_ptr<const TaskModel> target_;
    std::vector<std::optional<TaskVertex>> images_;
};

struct MorphismCheck {
    bool ok = true;
    /// First offending protocol state, with a reason.
    std::optional<StateId> state;
    std::string reason;
};

/// proj_I o delta = proj_I on every vertex, and every protocol state maps onto a target state.
/// Throws PartialAssignmentError when some vertex has no image.
MorphismCheck check_morphism(const Morphism& delta);
bool verify_morphism(const Morphism& delta);

/// The protocol's own input atoms plus the decide atoms of each vertex's image, without
/// verification.
SimplicialModel pull_back(const Morphism& delta);

/// pull_back after verify_morphism; throws UnverifiedMorphismError when verification fails.
SimplicialModel apply_factual_change(const Morphism& delta);

/// The protocol model labeled with its inputs and with decide_a=decisions[v] on each
/// state's color-a vertex v that has a decision.
SimplicialModel decision_labeled(const ProtocolModel& p, const DecisionMap& decisions);

struct KnowledgeGainReport {
    bool holds = true;
    std::size_t checked = 0;
    std::vector<StateId> violations;
};

/// For each listed protocol state X (all states when empty): target.fc, delta(X) |= phi implies
/// pull_back(delta), X |= phi. phi must be closed.
KnowledgeGainReport knowledge_gain(const Morphism& delta, const Formula& phi, const std::vector<StateId>& states = {});
bool knowledge_gain_check(const Morphism& delta, const Formula& phi, const std::vector<StateId>& states = {});

struct SearchOptions {
    Execution execution = Execution::Serial;
    /// Maximum search nodes; 0 means unlimited.
    std::uint64_t node_limit = 0;
    /// Depth at which the parallel search splits the tree into independent tasks.
    int split_depth = 3;
};

struct SearchResult {
    enum class Status { Found, None, Limit };
    Status status = Status::None;
    std::optional<Morphism> morphism;
    std::uint64_t nodes = 0;
    std::size_t variables = 0;
    /// Deepest partial assignment reached.
    std::size_t max_depth = 0;
};

std::string to_string(SearchResult::Status s);

/// Exhaustive backtracking for a morphism into the k-set agreement task model. Each protocol
/// vertex decides one of the inputs it has seen; a branch is cut as soon as some state's
/// assigned decisions use more than k values. Only states whose vertexes have seen more than k
/// values in total can fail, so the search runs per connected component of those states and
/// every other vertex decides its own input. Found morphisms are verified before return.
/// The seen-input domains are complete when p is closed under changing the inputs of processes
/// a vertex has not seen, as I[IS^m] and its history-defined submodels are.
SearchResult search_morphism(
    std::shared_ptr<const ProtocolModel> p, std::shared_ptr<const TaskModel> t, const SearchOptions& opts = {});

}  // namespace epimu
