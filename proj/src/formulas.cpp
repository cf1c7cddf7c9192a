#include "epimu/formulas.hpp"

#include "epimu/errors.hpp"

namespace epimu {

namespace {

Formula in(ProcessId a, int v) { return Formula::atom(input_atom(a, v)); }
Formula out(ProcessId a, int v) { return Formula::atom(decide_atom(a, v)); }

void check_n(int n)
{
    if (n < 0 || n >= kMaxProcesses)
        throw PreconditionError("n out of range: " + std::to_string(n));
}

/// /\_a (/\_{i != j} ~(p_a(i) & p_a(j)) & \/_i p_a(i))
Formula functional(int n, Formula (*atom)(ProcessId, int))
{
    check_n(n);
    std::vector<Formula> per_process;
    for (ProcessId a = 0; a <= n; ++a) {
        std::vector<Formula> parts;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j)
                    parts.push_back(negate(Formula::conj({atom(a, i), atom(a, j)})));
        std::vector<Formula> some;
        for (int i = 0; i <= n; ++i)
            some.push_back(atom(a, i));
        parts.push_back(Formula::disj(std::move(some)));
        per_process.push_back(Formula::conj(std::move(parts)));
    }
    return Formula::conj(std::move(per_process));
}

}  // namespace

Formula ifun(int n) { return functional(n, in); }

Formula ofun(int n) { return functional(n, out); }

Formula valid_f(int n)
{
    check_n(n);
    std::vector<Formula> parts;
    for (ProcessId a = 0; a <= n; ++a)
        for (int d = 0; d <= n; ++d) {
            std::vector<Formula> someone;
            for (ProcessId b = 0; b <= n; ++b)
                someone.push_back(in(b, d));
            parts.push_back(implies(out(a, d), Formula::disj(std::move(someone))));
        }
    return Formula::conj(std::move(parts));
}

Formula agree(int n, int k)
{
    check_n(n);
    if (k < 1 || k > n + 1)
        throw PreconditionError("agree needs 1 <= k <= n+1; got k = " + std::to_string(k));
    std::vector<Formula> choices;
    for (auto values : nonempty_subsets(n)) {
        if (values.size() > k)
            continue;
        std::vector<Formula> all;
        for (ProcessId a = 0; a <= n; ++a) {
            std::vector<Formula> within;
            for (auto d : values)
                within.push_back(out(a, d));
            all.push_back(Formula::disj(std::move(within)));
        }
        choices.push_back(Formula::conj(std::move(all)));
    }
    return Formula::disj(std::move(choices));
}

Formula know(int n)
{
    check_n(n);
    std::vector<Formula> parts;
    for (auto group : nonempty_subsets(n))
        for (auto a : group)
            for (int d = 0; d <= n; ++d)
                parts.push_back(implies(out(a, d), Formula::dknow(group, out(a, d))));
    return Formula::conj(std::move(parts));
}

Formula dec(ProcessSet group)
{
    if (group.empty())
        throw PreconditionError("DEC needs a nonempty group");
    std::vector<Formula> parts;
    for (int d = 0; d < group.size(); ++d) {
        std::vector<Formula> someone;
        for (auto a : group)
            someone.push_back(out(a, d));
        parts.push_back(Formula::disj(std::move(someone)));
    }
    return Formula::conj(std::move(parts));
}

Formula phi(int n, int k)
{
    const Formula z = Formula::var("Z");
    const Formula inner = Formula::conj({know(n), agree(n, k), z});
    std::vector<Formula> body{ofun(n), valid_f(n)};
    for (auto group : nonempty_subsets(n))
        body.push_back(implies(dec(group), Formula::dknow(group, inner)));
    return Formula::nu("Z", Formula::conj(std::move(body)));
}

bool FormulaFamily::is_known(const std::string& name)
{
    return name == "ifun" || name == "ofun" || name == "valid" || name == "agree" || name == "know" || name == "phi";
}

Formula FormulaFamily::get(const std::string& name, int n, int k)
{
    if (!is_known(name))
        throw PreconditionError("unknown formula name '" + name + "'");
    const bool uses_k = name == "agree" || name == "phi";
    const auto key = std::make_tuple(name, n, uses_k ? k : 0);
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end())
        return it->second;
    Formula f = name == "ifun" ? ifun(n)
        : name == "ofun"       ? ofun(n)
        : name == "valid"      ? valid_f(n)
        : name == "agree"      ? agree(n, k)
        : name == "know"       ? know(n)
                               : phi(n, k);
    cache_.emplace(key, f);
    return f;
}

FormulaFamily& formula_family()
{
    static FormulaFamily family;
    return family;
}

}  // namespace epimu
