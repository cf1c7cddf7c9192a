#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "epimu/formula.hpp"

namespace epimu {

/// Each process holds exactly one input value in [0,n].
Formula ifun(int n);
/// Each process decides exactly one value in [0,n].
Formula ofun(int n);
/// Every decided value is some process's input.
Formula valid_f(int n);
/// At most k distinct decisions. Needs 1 <= k <= n+1.
Formula agree(int n, int k);
/// A member of A that decides d decides d at every ~A-neighbor, for every nonempty A.
Formula know(int n);
/// Each of 0..|A|-1 is decided by some member of A. Propositional; A nonempty.
Formula dec(ProcessSet group);
/// nu Z.[OFUN & VALID & /\_{A} (DEC_A => D_A (KNOW & AGREE_k & Z))].
Formula phi(int n, int k);

/// Generated formulas by name, cached per (name, n, k). Names: ifun, ofun, valid, agree,
/// know, phi. `k` is ignored by names that take no k.
class FormulaFamily {
public:
    Formula get(const std::string& name, int n, int k = 1);
    static bool is_known(const std::string& name);

private:
    std::mutex mutex_;
    std::map<std::tuple<std::string, int, int>, Formula> cache_;
};

/// A process-wide family.
FormulaFamily& formula_family();

}  // namespace epimu
