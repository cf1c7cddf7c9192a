#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <optional>

#include "epimu/errors.hpp"
#include "epimu/morphism.hpp"

namespace epimu {

namespace {

struct Shared {
    std::atomic<bool> found{false};
    std::atomic<bool> limited{false};
    std::atomic<std::uint64_t> nodes{0};
    std::uint64_t node_limit = 0;
};

/// Decisions per vertex with per-state value masks; every change goes on a trail for undo.
class Solver {
public:
    /// Branches only on `vars`, in that order among equal domain sizes.
    Solver(const ProtocolModel& p, int k, Shared& shared, const std::vector<std::size_t>& vars)
        : f_(*p.frame), k_(k), shared_(shared), vars_(vars)
    {
        assign_.assign(f_.num_vertexes(), -1);
        domain_ = p.seen_values;
        used_.assign(f_.num_states(), 0);
        unassigned_ = vars.size();
    }

    std::size_t assigned() const { return vars_.size() - unassigned_; }
    const std::vector<int>& assignment() const { return assign_; }
    std::size_t max_depth() const { return max_depth_; }

    /// Smallest remaining domain, earliest in `vars` first; none when complete.
    std::optional<std::size_t> choose() const
    {
        std::optional<std::size_t> best;
        int best_size = 64;
        for (std::size_t v : vars_)
            if (assign_[v] < 0) {
                int s = std::popcount(domain_[v]);
                if (s < best_size) {
                    best = v;
                    best_size = s;
                    if (s <= 1)
                        break;
                }
            }
        return best;
    }

    std::uint32_t domain(std::size_t v) const { return domain_[v]; }

    std::size_t mark() const { return trail_.size(); }

    void undo(std::size_t to)
    {
        while (trail_.size() > to) {
            auto [kind, idx, old] = trail_.back();
            trail_.pop_back();
            if (kind == Change::Assign) {
                assign_[idx] = -1;
                ++unassigned_;
            } else if (kind == Change::Domain) {
                domain_[idx] = old;
            } else {
                used_[idx] = old;
            }
        }
    }

    /// Assigns and propagates; false on a violated state (caller undoes).
    bool assign(std::size_t v, int value)
    {
        shared_.nodes.fetch_add(1, std::memory_order_relaxed);
        trail_.push_back({Change::Assign, v, 0});
        assign_[v] = value;
        --unassigned_;
        max_depth_ = std::max(max_depth_, assigned());
        const std::uint32_t bit = std::uint32_t{1} << value;
        for (StateId s : f_.states_with_vertex(v)) {
            const std::uint32_t next = used_[s] | bit;
            if (next == used_[s])
                continue;
            if (std::popcount(next) > k_)
                return false;
            trail_.push_back({Change::Used, s, used_[s]});
            used_[s] = next;
            if (std::popcount(next) < k_)
                continue;
            for (ProcessId a = 0; a <= f_.n(); ++a) {
                const std::size_t u = f_.vertex_id(s, a);
                if (assign_[u] >= 0)
                    continue;
                const std::uint32_t nd = domain_[u] & next;
                if (nd == 0)
                    return false;
                if (nd != domain_[u]) {
                    trail_.push_back({Change::Domain, u, domain_[u]});
                    domain_[u] = nd;
                }
            }
        }
        return true;
    }

    /// Depth-first completion from the current partial assignment.
    bool solve()
    {
        if (shared_.found.load(std::memory_order_relaxed) || shared_.limited.load(std::memory_order_relaxed))
            return false;
        if (shared_.node_limit && shared_.nodes.load(std::memory_order_relaxed) >= shared_.node_limit) {
            shared_.limited = true;
            return false;
        }
        auto v = choose();
        if (!v)
            return true;
        for (std::uint32_t d = domain_[*v]; d; d &= d - 1) {
            const std::size_t m = mark();
            if (assign(*v, std::countr_zero(d)) && solve())
                return true;
            undo(m);
        }
        return false;
    }

private:
    enum class Change { Assign, Domain, Used };
    struct Entry {
        Change kind;
        std::size_t index;
        std::uint32_t old;
    };

    const Frame& f_;
    int k_;
    Shared& shared_;
    const std::vector<std::size_t>& vars_;
    std::vector<int> assign_;
    std::vector<std::uint32_t> domain_;
    std::vector<std::uint32_t> used_;
    std::vector<Entry> trail_;
    std::size_t unassigned_ = 0;
    std::size_t max_depth_ = 0;
};

using Prefix = std::vector<std::pair<std::size_t, int>>;

/// Consistent partial assignments at `depth`, or shallower complete ones, in search order.
void frontier(Solver& s, int depth, Prefix& prefix, std::vector<Prefix>& out)
{
    auto v = s.choose();
    if (!v || depth == 0) {
        out.push_back(prefix);
        return;
    }
    for (std::uint32_t d = s.domain(*v); d; d &= d - 1) {
        const std::size_t m = s.mark();
        const int value = std::countr_zero(d);
        if (s.assign(*v, value)) {
            prefix.emplace_back(*v, value);
            frontier(s, depth - 1, prefix, out);
            prefix.pop_back();
        }
        s.undo(m);
    }
}

/// Vertexes of states that can see more than k values, grouped by connected component and
/// ordered by decreasing number of such states. Other states hold under any seen-value choice.
std::vector<std::vector<std::size_t>> tight_components(const ProtocolModel& p, int k)
{
    const Frame& f = *p.frame;
    const std::size_t nv = f.num_vertexes();
    std::vector<std::size_t> parent(nv), degree(nv, 0);
    for (std::size_t v = 0; v < nv; ++v)
        parent[v] = v;
    auto root = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (StateId s = 0; s < f.num_states(); ++s) {
        std::uint32_t seen = 0;
        for (ProcessId a = 0; a <= f.n(); ++a)
            seen |= p.seen_values[f.vertex_id(s, a)];
        if (std::popcount(seen) <= k)
            continue;
        const std::size_t first = root(f.vertex_id(s, 0));
        for (ProcessId a = 0; a <= f.n(); ++a) {
            const std::size_t v = f.vertex_id(s, a);
            ++degree[v];
            parent[root(v)] = first;
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < nv; ++v)
        if (degree[v] > 0)
            groups[root(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, vs] : groups) {
        std::stable_sort(vs.begin(), vs.end(), [&](std::size_t x, std::size_t y) { return degree[x] > degree[y]; });
        out.push_back(std::move(vs));
    }
    return out;
}

/// A solution of one component, or none.
std::optional<std::vector<int>> solve_component(
    const ProtocolModel& p, int k, const std::vector<std::size_t>& vars, const SearchOptions& opts, Shared& shared,
    std::size_t& deepest)
{
    shared.found = false;
    if (opts.execution == Execution::Serial) {
        Solver s(p, k, shared, vars);
        const bool hit = s.solve();
        deepest = std::max(deepest, s.max_depth());
        if (hit)
            return s.assignment();
        return std::nullopt;
    }
    Solver root(p, k, shared, vars);
    std::vector<Prefix> tasks;
    Prefix prefix;
    frontier(root, std::max(opts.split_depth, 0), prefix, tasks);
    std::mutex mu;
    std::size_t best_task = tasks.size();
    std::optional<std::vector<int>> solution;
    deepest = std::max(deepest, root.max_depth());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(tasks.size()); ++i) {
        if (shared.found.load() || shared.limited.load())
            continue;
        Solver s(p, k, shared, vars);
        bool ok = true;
        for (auto [v, value] : tasks[static_cast<std::size_t>(i)])
            ok = ok && s.assign(v, value);
        const bool hit = ok && s.solve();
        std::lock_guard lock(mu);
        deepest = std::max(deepest, s.max_depth());
        if (hit && static_cast<std::size_t>(i) < best_task) {
            best_task = static_cast<std::size_t>(i);
            solution = s.assignment();
            shared.found = true;
        }
    }
    return solution;
}

}  // namespace

SearchResult search_morphism(std::shared_ptr<const ProtocolModel> p, std::shared_ptr<const TaskModel> t, const SearchOptions& opts)
{
    if (!p || !t)
        throw PreconditionError("search needs a protocol and a task model");
    if (p->n != t->n)
        throw ColorMismatchError("protocol and task models color different process sets");

    Shared shared;
    shared.node_limit = opts.node_limit;
    SearchResult result;
    result.variables = p->frame->num_vertexes();

    // Vertexes outside every tight state keep their own input.
    std::vector<int> decisions = p->own_input;
    bool solved = true;
    for (const auto& vars : tight_components(*p, t->k)) {
        auto part = solve_component(*p, t->k, vars, opts, shared, result.max_depth);
        if (!part) {
            solved = false;
            break;
        }
        for (std::size_t v : vars)
            decisions[v] = (*part)[v];
    }

    result.nodes = shared.nodes.load();
    if (solved) {
        Morphism m = Morphism::from_decisions(p, t, decisions);
        auto check = check_morphism(m);
        if (!check.ok)
            throw std::logic_error("search produced a morphism that does not verify: " + check.reason);
        result.status = SearchResult::Status::Found;
        result.morphism = std::move(m);
    } else {
        result.status = shared.limited ? SearchResult::Status::Limit : SearchResult::Status::None;
    }
    return result;
}

}  // namespace epimu
