#include "epimu/subdivision.hpp"

#include "epimu/errors.hpp"

namespace epimu {

Simplex subdivide_facet(const Simplex& base, const Osp& gamma)
{
    if (chi(base) != ProcessSet::all(gamma.n()))
        throw PreconditionError("subdivision needs a facet colored by [0," + std::to_string(gamma.n())
            + "], got " + base.to_string());
    std::vector<Vertex> out;
    out.reserve(base.size());
    for (ProcessId a = 0; a <= gamma.n(); ++a) {
        std::vector<ViewEntry> seen;
        for (auto b : view_in_osp(a, gamma))
            seen.push_back({b, view_of(b, base)});
        out.push_back({a, Value::view(std::move(seen))});
    }
    return Simplex(std::move(out));
}

std::string SubdividedFacet::name() const
{
    std::string s = base.to_string();
    for (const auto& g : history)
        s += "*" + g.to_string();
    return s;
}

SubdividedFacet iterated_subdivision(const Simplex& base, std::vector<Osp> history)
{
    if (history.empty())
        throw PreconditionError("iterated subdivision needs at least one round");
    Simplex current = base;
    for (const auto& g : history)
        current = subdivide_facet(current, g);
    return {base, std::move(history), std::move(current)};
}

static void unfold_into(const Value& view, std::map<ProcessId, Value>& out)
{
    for (const auto& e : view.entries()) {
        if (e.value.kind() == Value::Kind::View)
            unfold_into(e.value, out);
        else
            out.emplace(e.process, e.value);
    }
}

std::map<ProcessId, Value> unfold_view(const Value& view)
{
    std::map<ProcessId, Value> out;
    unfold_into(view, out);
    return out;
}

std::vector<SubdividedFacet> incident_by_osp(
    const SubdividedFacet& sigma, ProcessSet group, int d, ProcessId b, bool include_self)
{
    const int n = sigma.base.dimension();
    if (d < 0 || d > n || b < 0 || b > d)
        throw PreconditionError("incident_by_osp needs 0 <= b <= d <= n");
    ProcessSet expected = ProcessSet::range(0, d);
    expected.erase(b);
    if (group != expected)
        throw PreconditionError("A must be [0,d] \\ {b}; got " + group.to_string());
    if (sigma.history.empty())
        throw PreconditionError("incident_by_osp needs a nonempty history");

    const ProcessSet b_only = ProcessSet::singleton(b);
    std::ptrdiff_t last_moving = -1;
    for (std::size_t i = 0; i < sigma.history.size(); ++i) {
        const Osp& g = sigma.history[i];
        if (!has_tail_form(g, d))
            throw PreconditionError(g.to_string() + " is not of tail form for d = " + std::to_string(d));
        const std::size_t r = g.num_blocks() - static_cast<std::size_t>(n - d);
        if (g.blocks()[r - 1] != b_only)
            last_moving = static_cast<std::ptrdiff_t>(i);
    }

    // A never sees the tail, nor b unless some round puts an A-process at or after b.
    const ProcessSet fixed = last_moving < 0 ? group : ProcessSet::range(0, d);
    std::vector<std::vector<Osp>> hs{sigma.history};
    if (last_moving >= 0) {
        auto flipped = sigma.history;
        auto& g = flipped[static_cast<std::size_t>(last_moving)];
        g = flip(group, g);
        hs.push_back(std::move(flipped));
    }

    std::vector<SubdividedFacet> out;
    const std::vector<ProcessId> free_procs = (ProcessSet::all(n) - fixed).members();
    std::vector<int> digits(free_procs.size(), 0);
    for (;;) {
        std::vector<Vertex> vs(sigma.base.vertexes().begin(), sigma.base.vertexes().end());
        for (std::size_t i = 0; i < free_procs.size(); ++i)
            vs[static_cast<std::size_t>(free_procs[i])].value = Value::base(digits[i]);
        Simplex y(std::move(vs));
        for (const auto& h : hs)
            if (include_self || y != sigma.base || h != sigma.history)
                out.push_back(iterated_subdivision(y, h));
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] > n)
            digits[pos++] = 0;
        if (pos == digits.size())
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Osp>> round_histories(const std::vector<Osp>& rounds, int m)
{
    std::vector<std::vector<Osp>> out{{}};
    for (int i = 0; i < m; ++i) {
        std::vector<std::vector<Osp>> next;
        next.reserve(out.size() * rounds.size());
        for (const auto& h : out)
            for (const auto& g : rounds) {
                next.push_back(h);
                next.back().push_back(g);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace epimu
