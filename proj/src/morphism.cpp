#include "epimu/morphism.hpp"

#include "epimu/errors.hpp"
#include "epimu/eval.hpp"

namespace epimu {

Morphism::Morphism(std::shared_ptr<const ProtocolModel> source, std::shared_ptr<const TaskModel> target)
    : source_(std::move(source)), target_(std::move(target))
{
    if (!source_ || !target_)
        throw PreconditionError("a morphism needs both a source and a target model");
    if (source_->n != target_->n)
        throw ColorMismatchError("source and target models color different process sets");
    images_.resize(source_->frame->num_vertexes());
}

Morphism Morphism::decide_own_input(std::shared_ptr<const ProtocolModel> source, std::shared_ptr<const TaskModel> target)
{
    Morphism m(std::move(source), std::move(target));
    for (std::size_t v = 0; v < m.images_.size(); ++v)
        m.images_[v] = TaskVertex{m.source_->own_input[v], m.source_->own_input[v]};
    return m;
}

Morphism Morphism::from_decisions(
    std::shared_ptr<const ProtocolModel> source, std::shared_ptr<const TaskModel> target, const DecisionMap& decisions)
{
    Morphism m(std::move(source), std::move(target));
    if (decisions.size() != m.images_.size())
        throw PreconditionError("decision map size does not match the protocol's vertex count");
    for (std::size_t v = 0; v < decisions.size(); ++v)
        if (decisions[v] >= 0)
            m.images_[v] = TaskVertex{m.source_->own_input[v], decisions[v]};
    return m;
}

bool Morphism::is_total() const
{
    for (const auto& i : images_)
        if (!i)
            return false;
    return true;
}

DecisionMap Morphism::decisions() const
{
    DecisionMap out(images_.size(), -1);
    for (std::size_t v = 0; v < images_.size(); ++v)
        if (images_[v])
            out[v] = images_[v]->decision;
    return out;
}

std::optional<StateId> Morphism::image_state(StateId s) const
{
    const Frame& f = *source_->frame;
    std::vector<Vertex> vs;
    for (ProcessId a = 0; a <= f.n(); ++a) {
        const auto& img = images_[f.vertex_id(s, a)];
        if (!img)
            return std::nullopt;
        vs.push_back({a, Value::pair(Value::base(img->input), Value::base(img->decision))});
    }
    return target_->frame->find(Simplex(std::move(vs)));
}

MorphismCheck check_morphism(const Morphism& delta)
{
    const ProtocolModel& p = delta.source();
    const Frame& f = *p.frame;
    for (std::size_t v = 0; v < f.num_vertexes(); ++v)
        if (!delta.image(v))
            throw PartialAssignmentError("vertex " + f.vertex(v).to_string() + " has no image");
    for (StateId s = 0; s < f.num_states(); ++s) {
        for (ProcessId a = 0; a <= f.n(); ++a) {
            const std::size_t v = f.vertex_id(s, a);
            if (delta.image(v)->input != p.own_input[v])
                return {false, s,
                    "image of " + f.vertex(v).to_string() + " changes process " + std::to_string(a) + "'s input"};
        }
        if (!delta.image_state(s))
            return {false, s, "image of " + p.facets[s].name() + " is not a task state"};
    }
    return {};
}

bool verify_morphism(const Morphism& delta)
{
    return check_morphism(delta).ok;
}

SimplicialModel decision_labeled(const ProtocolModel& p, const DecisionMap& decisions)
{
    const Frame& f = *p.frame;
    if (decisions.size() != f.num_vertexes())
        throw PreconditionError("decision map size does not match the protocol's vertex count");
    std::vector<std::vector<AtomicProp>> labels(f.num_states());
    for (StateId s = 0; s < f.num_states(); ++s) {
        auto own = p.model.labels(s);
        labels[s].assign(own.begin(), own.end());
        for (ProcessId a = 0; a <= f.n(); ++a)
            if (int d = decisions[f.vertex_id(s, a)]; d >= 0)
                labels[s].push_back(decide_atom(a, d));
    }
    return p.model.relabeled(std::move(labels));
}

SimplicialModel pull_back(const Morphism& delta)
{
    return decision_labeled(delta.source(), delta.decisions());
}

SimplicialModel apply_factual_change(const Morphism& delta)
{
    MorphismCheck c;
    try {
        c = check_morphism(delta);
    } catch (const PartialAssignmentError& e) {
        throw UnverifiedMorphismError(e.what());
    }
    if (!c.ok)
        throw UnverifiedMorphismError("morphism does not verify: " + c.reason);
    return pull_back(delta);
}

KnowledgeGainReport knowledge_gain(const Morphism& delta, const Formula& phi, const std::vector<StateId>& states)
{
    if (!phi.is_closed())
        throw UnboundVariableError(phi.free_vars().front());
    const ProtocolModel& p = delta.source();
    std::vector<StateId> todo = states;
    if (todo.empty())
        for (StateId s = 0; s < p.frame->num_states(); ++s)
            todo.push_back(s);

    const StateSet in_target = eval(delta.target().fc, {}, phi);
    const StateSet in_source = eval(pull_back(delta), {}, phi);
    KnowledgeGainReport r;
    for (auto s : todo) {
        if (s >= p.frame->num_states())
            throw StateNotInModelError("state " + std::to_string(s) + " is not in the protocol model");
        auto img = delta.image_state(s);
        if (!img)
            throw PreconditionError("image of " + p.facets[s].name() + " is not a task state");
        ++r.checked;
        if (in_target.test(*img) && !in_source.test(s)) {
            r.holds = false;
            r.violations.push_back(s);
        }
    }
    return r;
}

bool knowledge_gain_check(const Morphism& delta, const Formula& phi, const std::vector<StateId>& states)
{
    return knowledge_gain(delta, phi, states).holds;
}

std::string to_string(SearchResult::Status s)
{
    switch (s) {
    case SearchResult::Status::Found:
        return "SOLVABLE";
    case SearchResult::Status::None:
        return "UNSOLVABLE";
    case SearchResult::Status::Limit:
        return "LIMIT";
    }
    return "?";
}

}  // namespace epimu
