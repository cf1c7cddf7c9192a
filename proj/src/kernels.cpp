#include "epimu/kernels.hpp"

#include <cstdint>
#include <vector>

namespace epimu::kernels {

StateSet dknow_serial(const Partition& classes, const StateSet& body)
{
    StateSet out(body.size());
    for (const auto& cls : classes.members) {
        bool all = true;
        for (StateId s : cls)
            if (!body.test(s)) {
                all = false;
                break;
            }
        if (all)
            for (StateId s : cls)
                out.set(s);
    }
    return out;
}

StateSet dknow_parallel(const Partition& classes, const StateSet& body)
{
    const auto num_classes = static_cast<std::int64_t>(classes.members.size());
    const auto num_states = static_cast<std::int64_t>(body.size());
    std::vector<char> class_ok(classes.members.size(), 0);

#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t c = 0; c < num_classes; ++c) {
        char ok = 1;
        for (StateId s : classes.members[c])
            if (!body.test(s)) {
                ok = 0;
                break;
            }
        class_ok[c] = ok;
    }

    std::vector<char> member(body.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < num_states; ++s)
        member[s] = class_ok[classes.class_of[s]];

    StateSet out(body.size());
    for (std::int64_t s = 0; s < num_states; ++s)
        if (member[s])
            out.set(s);
    return out;
}

}  // namespace epimu::kernels
