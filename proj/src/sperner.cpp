#include "epimu/sperner.hpp"

#include <map>

#include "epimu/errors.hpp"

namespace epimu {

SpernerComplex sperner_complex(int n, int m)
{
    if (n < 0 || n >= kMaxProcesses)
        throw PreconditionError("n out of range: " + std::to_string(n));
    if (m < 1)
        throw PreconditionError("the subdivision needs at least one round");
    std::vector<Vertex> corner;
    for (ProcessId a = 0; a <= n; ++a)
        corner.push_back({a, Value::base(a)});
    const Simplex base(std::move(corner));

    SpernerComplex c{n, m, {}, {}, {}};
    std::map<Vertex, std::size_t> ids;
    for (auto& h : round_histories(enumerate_osp(n), m)) {
        const auto sigma = iterated_subdivision(base, std::move(h));
        std::vector<std::size_t> facet;
        for (const auto& v : sigma.realized.vertexes()) {
            auto [it, fresh] = ids.emplace(v, c.vertexes.size());
            if (fresh) {
                c.vertexes.push_back(v);
                ProcessSet carrier;
                for (const auto& [b, value] : unfold_view(v.value))
                    carrier.insert(b);
                c.carriers.push_back(carrier);
            }
            facet.push_back(it->second);
        }
        c.facets.push_back(std::move(facet));
    }
    return c;
}

bool is_sperner(const SpernerComplex& c, const Coloring& coloring)
{
    if (coloring.size() != c.vertexes.size())
        return false;
    for (std::size_t v = 0; v < coloring.size(); ++v)
        if (!c.carriers[v].contains(coloring[v]))
            return false;
    return true;
}

std::size_t sperner_count(const SpernerComplex& c, const Coloring& coloring)
{
    if (coloring.size() != c.vertexes.size())
        throw NonSpernerColoringError("coloring has " + std::to_string(coloring.size()) + " entries for "
            + std::to_string(c.vertexes.size()) + " vertexes");
    for (std::size_t v = 0; v < coloring.size(); ++v)
        if (!c.carriers[v].contains(coloring[v]))
            throw NonSpernerColoringError("vertex " + c.vertexes[v].to_string() + " colored "
                + std::to_string(coloring[v]) + " outside its carrier " + c.carriers[v].to_string());
    const ProcessSet all = ProcessSet::all(c.n);
    std::size_t count = 0;
    for (const auto& f : c.facets) {
        ProcessSet colors;
        for (auto v : f)
            colors.insert(coloring[v]);
        count += colors == all;
    }
    return count;
}

std::size_t sperner_odd_count(int n, int m, const Coloring& coloring)
{
    return sperner_count(sperner_complex(n, m), coloring);
}

Coloring least_carrier_coloring(const SpernerComplex& c)
{
    Coloring out;
    for (auto carrier : c.carriers)
        out.push_back(carrier.min());
    return out;
}

Coloring own_color_coloring(const SpernerComplex& c)
{
    Coloring out;
    for (const auto& v : c.vertexes)
        out.push_back(v.color);
    return out;
}

Coloring random_sperner_coloring(const SpernerComplex& c, std::mt19937_64& rng)
{
    Coloring out;
    for (auto carrier : c.carriers) {
        auto members = carrier.members();
        out.push_back(members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)]);
    }
    return out;
}

std::vector<Coloring> all_sperner_colorings(const SpernerComplex& c, std::size_t limit)
{
    std::uint64_t total = 1;
    for (auto carrier : c.carriers) {
        total *= static_cast<std::uint64_t>(carrier.size());
        if (total > limit)
            throw ResourceLimitError("Sperner colorings", total, limit);
    }
    std::vector<std::vector<ProcessId>> choices;
    for (auto carrier : c.carriers)
        choices.push_back(carrier.members());
    std::vector<std::size_t> pos(choices.size(), 0);
    std::vector<Coloring> out;
    out.reserve(total);
    for (;;) {
        Coloring col(choices.size());
        for (std::size_t v = 0; v < choices.size(); ++v)
            col[v] = choices[v][pos[v]];
        out.push_back(std::move(col));
        std::size_t v = 0;
        while (v < pos.size() && ++pos[v] == choices[v].size())
            pos[v++] = 0;
        if (v == pos.size())
            return out;
    }
}

}  // namespace epimu
