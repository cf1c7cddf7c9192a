#pragma once

#include "epimu/model.hpp"

namespace epimu {

enum class Execution { Serial, Parallel };

namespace kernels {

/// States all of whose ~A-class members lie in `body`. Serial reference.
StateSet dknow_serial(const Partition& classes, const StateSet& body);

/// Same result as dknow_serial; classes and states are processed with OpenMP.
StateSet dknow_parallel(const Partition& classes, const StateSet& body);

inline StateSet dknow(const Partition& classes, const StateSet& body, Execution ex)
{
    return ex == Execution::Parallel ? dknow_parallel(classes, body) : dknow_serial(classes, body);
}

}  // namespace kernels
}  // namespace epimu
