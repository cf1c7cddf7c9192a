#include "epimu/eval.hpp"

#include <unordered_map>
#include <vector>

#include "epimu/errors.hpp"

namespace epimu {

namespace {

class Evaluator {
public:
    Evaluator(const SimplicialModel& m, const Interpretation& rho, const EvalOptions& opts)
        : m_(m), rho_(rho), opts_(opts)
    {
    }

    StateSet run(const Formula& f)
    {
        if (f.is_closed() && f.kind() != Formula::Kind::Atom && f.kind() != Formula::Kind::NegAtom) {
            if (auto it = memo_.find(f.id()); it != memo_.end())
                return it->second;
            StateSet r = compute(f);
            memo_.emplace(f.id(), r);
            return r;
        }
        return compute(f);
    }

private:
    const StateSet& lookup(const std::string& name) const
    {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == name)
                return *it->second;
        if (auto it = rho_.find(name); it != rho_.end()) {
            if (it->second.size() != m_.num_states())
                throw PreconditionError("binding of '" + name + "' is not a subset of the model's states");
            return it->second;
        }
        throw UnboundVariableError(name);
    }

    StateSet compute(const Formula& f)
    {
        switch (f.kind()) {
        case Formula::Kind::Atom:
            return m_.atom_states(f.atom_prop());
        case Formula::Kind::NegAtom:
            return ~m_.atom_states(f.atom_prop());
        case Formula::Kind::Var:
            return lookup(f.name());
        case Formula::Kind::And: {
            StateSet acc = m_.all_states();
            for (const auto& c : f.children()) {
                if (acc.none())
                    break;
                acc &= run(c);
            }
            return acc;
        }
        case Formula::Kind::Or: {
            StateSet acc = m_.no_states();
            for (const auto& c : f.children()) {
                if (acc.all())
                    break;
                acc |= run(c);
            }
            return acc;
        }
        case Formula::Kind::DKnow:
            return kernels::dknow(m_.frame().classes(f.group()), run(f.body()), opts_.execution);
        case Formula::Kind::Nu:
            return greatest_fixpoint(f);
        }
        return m_.no_states();
    }

    StateSet greatest_fixpoint(const Formula& f)
    {
        const std::size_t cap = opts_.iteration_cap ? opts_.iteration_cap : m_.num_states() + 1;
        StateSet current = m_.all_states();
        for (std::size_t iter = 0; iter < cap; ++iter) {
            scope_.emplace_back(f.name(), &current);
            StateSet next = run(f.body());
            scope_.pop_back();
            if (next == current)
                return current;
            current = std::move(next);
        }
        throw IterationCapError("nu " + f.name() + " did not stabilize within " + std::to_string(cap)
            + " iterations (last size " + std::to_string(current.count()) + ")");
    }

    const SimplicialModel& m_;
    const Interpretation& rho_;
    const EvalOptions& opts_;
    std::vector<std::pair<std::string, const StateSet*>> scope_;
    std::unordered_map<const void*, StateSet> memo_;
};

void require_closed(const Formula& f)
{
    if (!f.is_closed())
        throw UnboundVariableError(f.free_vars().front());
}

}  // namespace

StateSet eval(const SimplicialModel& m, const Interpretation& rho, const Formula& f, const EvalOptions& opts)
{
    return Evaluator(m, rho, opts).run(f);
}

bool satisfies(const SimplicialModel& m, StateId x, const Formula& f, const EvalOptions& opts)
{
    if (x >= m.num_states())
        throw StateNotInModelError("state " + std::to_string(x) + " is not in the model");
    require_closed(f);
    return eval(m, {}, f, opts).test(x);
}

bool satisfies(const SimplicialModel& m, const Simplex& x, const Formula& f, const EvalOptions& opts)
{
    auto id = m.frame().find(x);
    if (!id)
        throw StateNotInModelError("facet " + x.to_string() + " is not a state of the model");
    return satisfies(m, *id, f, opts);
}

bool valid(const SimplicialModel& m, const Formula& f, const EvalOptions& opts)
{
    require_closed(f);
    return eval(m, {}, f, opts).all();
}

}  // namespace epimu
