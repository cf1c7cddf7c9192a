#include "epimu/model.hpp"

#include <algorithm>
#include <map>

#include "epimu/errors.hpp"

namespace epimu {

Frame::Frame(int n, std::vector<Simplex> facets) : n_(n), facets_(std::move(facets))
{
    if (n < 0 || n >= kMaxProcesses)
        throw PreconditionError("system size out of range: n = " + std::to_string(n));
    const ProcessSet all = ProcessSet::all(n);
    index_.reserve(facets_.size());
    vertex_of_.resize(facets_.size() * (n + 1));
    for (StateId s = 0; s < facets_.size(); ++s) {
        const Simplex& f = facets_[s];
        if (chi(f) != all)
            throw PreconditionError("state " + f.to_string() + " does not color exactly [0," + std::to_string(n) + "]");
        if (!index_.emplace(f, s).second)
            throw PreconditionError("duplicate state " + f.to_string());
        for (const auto& v : f.vertexes()) {
            auto [it, inserted] = vertex_index_.emplace(v, vertexes_.size());
            if (inserted) {
                vertexes_.push_back(v);
                incidence_.emplace_back();
            }
            vertex_of_[s * (n + 1) + v.color] = it->second;
            incidence_[it->second].push_back(s);
        }
    }
}

Frame::Frame(const Complex& complex) : Frame(complex.n(), {complex.facets().begin(), complex.facets().end()}) {}

std::optional<StateId> Frame::find(const Simplex& facet) const
{
    auto it = index_.find(facet);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Frame::find_vertex(const Vertex& v) const
{
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end())
        return std::nullopt;
    return it->second;
}

bool Frame::related(ProcessSet group, StateId x, StateId y) const
{
    for (auto a : group)
        if (!indist(a, x, y))
            return false;
    return true;
}

const Partition& Frame::classes(ProcessSet group) const
{
    if (group.empty())
        throw PreconditionError("~A is undefined for the empty group");
    if (!group.subset_of(ProcessSet::all(n_)))
        throw PreconditionError("group " + group.to_string() + " is not a set of processes of the frame");

    std::lock_guard lock(cache_mutex_);
    auto& slot = class_cache_[group.bits()];
    if (slot)
        return *slot;

    auto part = std::make_unique<Partition>();
    part->class_of.resize(num_states());
    const auto members = group.members();
    std::map<std::vector<std::size_t>, std::size_t> key_to_class;
    std::vector<std::size_t> key(members.size());
    for (StateId s = 0; s < num_states(); ++s) {
        for (std::size_t i = 0; i < members.size(); ++i)
            key[i] = vertex_id(s, members[i]);
        auto [it, inserted] = key_to_class.emplace(key, part->members.size());
        if (inserted)
            part->members.emplace_back();
        part->class_of[s] = it->second;
        part->members[it->second].push_back(s);
    }
    slot = std::move(part);
    return *slot;
}

std::vector<std::pair<StateId, StateId>> Frame::related_pairs(ProcessSet group) const
{
    std::vector<std::pair<StateId, StateId>> out;
    for (const auto& cls : classes(group).members)
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                out.emplace_back(cls[i], cls[j]);
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialModel::SimplicialModel(std::shared_ptr<const Frame> frame, std::vector<std::vector<AtomicProp>> labels)
    : frame_(std::move(frame)), labels_(std::move(labels)), empty_(frame_->num_states())
{
    if (labels_.size() != frame_->num_states())
        throw PreconditionError("labeling covers " + std::to_string(labels_.size()) + " states, frame has "
            + std::to_string(frame_->num_states()));
    std::map<AtomicProp, StateSet> index;
    for (StateId s = 0; s < labels_.size(); ++s) {
        auto& ls = labels_[s];
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        for (const auto& p : ls) {
            auto [it, inserted] = index.try_emplace(p, frame_->num_states());
            it->second.set(s);
        }
    }
    atom_index_.assign(std::make_move_iterator(index.begin()), std::make_move_iterator(index.end()));
}

SimplicialModel SimplicialModel::with_input_labels(std::shared_ptr<const Frame> frame)
{
    std::vector<std::vector<AtomicProp>> labels(frame->num_states());
    for (StateId s = 0; s < frame->num_states(); ++s)
        for (const auto& v : frame->state(s).vertexes())
            labels[s].push_back({AtomicProp::Kind::Input, v.color, v.value});
    return SimplicialModel(std::move(frame), std::move(labels));
}

bool SimplicialModel::holds(StateId s, const AtomicProp& p) const
{
    const auto& ls = labels_.at(s);
    return std::binary_search(ls.begin(), ls.end(), p);
}

const StateSet& SimplicialModel::atom_states(const AtomicProp& p) const
{
    auto it = std::lower_bound(atom_index_.begin(), atom_index_.end(), p,
        [](const auto& entry, const AtomicProp& q) { return entry.first < q; });
    if (it == atom_index_.end() || it->first != p)
        return empty_;
    return it->second;
}

SimplicialModel SimplicialModel::relabeled(std::vector<std::vector<AtomicProp>> labels) const
{
    return SimplicialModel(frame_, std::move(labels));
}

}  // namespace epimu
