#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "epimu/formula.hpp"
#include "epimu/kernels.hpp"
#include "epimu/model.hpp"

namespace epimu {

/// Bindings of propositional variables to state sets.
using Interpretation = std::map<std::string, StateSet>;

struct EvalOptions {
    Execution execution = Execution::Serial;
    /// Maximum iterations per fixpoint; 0 means |S| + 1, the longest strictly decreasing chain.
    std::size_t iteration_cap = 0;
};

/// The denotation of f in m under rho. Greatest fixpoints iterate downward from the full
/// state set until stable. Throws UnboundVariableError for free variables missing from rho.
StateSet eval(const SimplicialModel& m, const Interpretation& rho, const Formula& f, const EvalOptions& opts = {});

/// m, x |= f for closed f. Throws StateNotInModelError for an unknown state.
bool satisfies(const SimplicialModel& m, StateId x, const Formula& f, const EvalOptions& opts = {});
bool satisfies(const SimplicialModel& m, const Simplex& x, const Formula& f, const EvalOptions& opts = {});

/// f holds at every state.
bool valid(const SimplicialModel& m, const Formula& f, const EvalOptions& opts = {});

}  // namespace epimu
