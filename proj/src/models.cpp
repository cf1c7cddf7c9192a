#include "epimu/models.hpp"

#include <bit>
#include <limits>

#include "epimu/errors.hpp"

namespace epimu {

namespace {

/// Calls f on every v in [0,hi]^len, in lexicographic order.
template <typename F>
void for_each_tuple(std::size_t len, int hi, F&& f)
{
    std::vector<int> v(len, 0);
    for (;;) {
        f(v);
        std::size_t i = len;
        while (i > 0 && ++v[i - 1] > hi)
            v[--i] = 0;
        if (i == 0)
            return;
    }
}

Simplex base_facet(const std::vector<int>& values)
{
    std::vector<Vertex> vs;
    vs.reserve(values.size());
    for (std::size_t a = 0; a < values.size(); ++a)
        vs.push_back({static_cast<ProcessId>(a), Value::base(values[a])});
    return Simplex(std::move(vs));
}

std::uint32_t value_mask(const Simplex& s)
{
    std::uint32_t m = 0;
    for (const auto& v : s.vertexes())
        m |= std::uint32_t{1} << v.value.as_base();
    return m;
}

void check_k(int n, int k)
{
    if (n < 0 || n >= kMaxProcesses)
        throw PreconditionError("n out of range: " + std::to_string(n));
    if (k < 1 || k > n + 1)
        throw PreconditionError("k must lie in [1, n+1]; got k = " + std::to_string(k));
}

std::vector<std::vector<AtomicProp>> base_input_labels(const std::vector<SubdividedFacet>& facets)
{
    std::vector<std::vector<AtomicProp>> labels(facets.size());
    for (std::size_t s = 0; s < facets.size(); ++s)
        for (const auto& v : facets[s].base.vertexes())
            labels[s].push_back({AtomicProp::Kind::Input, v.color, v.value});
    return labels;
}

std::shared_ptr<const Frame> realized_frame(int n, const std::vector<SubdividedFacet>& facets)
{
    std::vector<Simplex> realized;
    realized.reserve(facets.size());
    for (const auto& f : facets)
        realized.push_back(f.realized);
    return std::make_shared<const Frame>(n, std::move(realized));
}

}  // namespace

Complex input_complex(int n)
{
    if (n < 0 || n >= kMaxProcesses)
        throw PreconditionError("n out of range: " + std::to_string(n));
    std::vector<Simplex> facets;
    for_each_tuple(static_cast<std::size_t>(n) + 1, n, [&](const std::vector<int>& v) { facets.push_back(base_facet(v)); });
    return Complex(n, std::move(facets));
}

Complex sa_output_complex(int n, int k)
{
    check_k(n, k);
    std::vector<Simplex> facets;
    for_each_tuple(static_cast<std::size_t>(n) + 1, n, [&](const std::vector<int>& v) {
        Simplex f = base_facet(v);
        if (std::popcount(value_mask(f)) <= k)
            facets.push_back(std::move(f));
    });
    return Complex(n, std::move(facets));
}

std::optional<StateId> TaskModel::find(const Simplex& input, const Simplex& output) const
{
    if (input.size() != output.size())
        return std::nullopt;
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < input.size(); ++i) {
        const auto& x = input.vertexes()[i];
        const auto& o = output.vertexes()[i];
        if (x.color != o.color)
            return std::nullopt;
        vs.push_back({x.color, Value::pair(x.value, o.value)});
    }
    return frame->find(Simplex(std::move(vs)));
}

TaskModel task_model_sak(int n, int k)
{
    const Complex in = input_complex(n);
    const Complex out = sa_output_complex(n, k);
    std::vector<Simplex> inputs, outputs, states;
    for (const auto& x : in.facets()) {
        const std::uint32_t allowed = value_mask(x);
        for (const auto& o : out.facets()) {
            if ((value_mask(o) & ~allowed) != 0)
                continue;
            std::vector<Vertex> vs;
            for (ProcessId a = 0; a <= n; ++a)
                vs.push_back({a, Value::pair(view_of(a, x), view_of(a, o))});
            inputs.push_back(x);
            outputs.push_back(o);
            states.emplace_back(std::move(vs));
        }
    }
    auto frame = std::make_shared<const Frame>(n, std::move(states));
    std::vector<std::vector<AtomicProp>> plain(inputs.size()), fc(inputs.size());
    for (std::size_t s = 0; s < inputs.size(); ++s)
        for (ProcessId a = 0; a <= n; ++a) {
            AtomicProp in_atom{AtomicProp::Kind::Input, a, view_of(a, inputs[s])};
            plain[s].push_back(in_atom);
            fc[s].push_back(in_atom);
            fc[s].push_back({AtomicProp::Kind::Decide, a, view_of(a, outputs[s])});
        }
    SimplicialModel plain_model(frame, std::move(plain));
    SimplicialModel fc_model(frame, std::move(fc));
    return TaskModel{n, k, std::move(inputs), std::move(outputs), frame, std::move(plain_model), std::move(fc_model)};
}

ProtocolModel::ProtocolModel(int n_, int m_, std::vector<SubdividedFacet> facets_)
    : n(n_),
      m(m_),
      facets(std::move(facets_)),
      frame(realized_frame(n_, facets)),
      model(frame, base_input_labels(facets))
{
    const std::size_t nv = frame->num_vertexes();
    own_input.resize(nv);
    seen_values.resize(nv);
    seen_processes.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const Vertex& vx = frame->vertex(v);
        for (const auto& [b, val] : unfold_view(vx.value)) {
            seen_values[v] |= std::uint32_t{1} << val.as_base();
            seen_processes[v].insert(b);
            if (b == vx.color)
                own_input[v] = val.as_base();
        }
    }
}

std::optional<StateId> ProtocolModel::find(const SubdividedFacet& s) const
{
    auto id = frame->find(s.realized);
    if (!id || facets[*id] != s)
        return std::nullopt;
    return id;
}

std::uint64_t iis_state_count(int n, int m)
{
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    auto mul = [](std::uint64_t a, std::uint64_t b) { return (b != 0 && a > kMax / b) ? kMax : a * b; };
    // Fubini numbers by the binomial recurrence.
    std::vector<std::uint64_t> fub(static_cast<std::size_t>(n) + 2, 0);
    fub[0] = 1;
    for (int i = 1; i <= n + 1; ++i) {
        std::uint64_t binom = 1;
        for (int j = 1; j <= i; ++j) {
            binom = binom * static_cast<std::uint64_t>(i - j + 1) / static_cast<std::uint64_t>(j);
            std::uint64_t t = mul(binom, fub[static_cast<std::size_t>(i - j)]);
            fub[static_cast<std::size_t>(i)] = t > kMax - fub[static_cast<std::size_t>(i)] ? kMax : fub[static_cast<std::size_t>(i)] + t;
        }
    }
    std::uint64_t count = 1;
    for (int i = 0; i <= n; ++i)
        count = mul(count, static_cast<std::uint64_t>(n + 1));
    for (int i = 0; i < m; ++i)
        count = mul(count, fub[static_cast<std::size_t>(n + 1)]);
    return count;
}

ProtocolModel protocol_model_iis(int n, int m, std::size_t limit)
{
    if (n < 0 || n >= kMaxProcesses)
        throw PreconditionError("n out of range: " + std::to_string(n));
    if (m < 1)
        throw PreconditionError("the protocol needs at least one round");
    const std::uint64_t count = iis_state_count(n, m);
    if (count > limit)
        throw ResourceLimitError("I[IS^" + std::to_string(m) + "] at n = " + std::to_string(n), count, limit);

    const auto histories = round_histories(enumerate_osp(n), m);
    std::vector<SubdividedFacet> facets;
    facets.reserve(count);
    const Complex inputs = input_complex(n);
    for (const auto& x : inputs.facets())
        for (const auto& h : histories)
            facets.push_back(iterated_subdivision(x, h));
    return ProtocolModel(n, m, std::move(facets));
}

ProtocolModel restrict_protocol(const ProtocolModel& p, const std::function<bool(const SubdividedFacet&)>& keep)
{
    std::vector<SubdividedFacet> kept;
    for (const auto& f : p.facets)
        if (keep(f))
            kept.push_back(f);
    return ProtocolModel(p.n, p.m, std::move(kept));
}

ProcessSet carrier(ProcessId a, const SubdividedFacet& sigma)
{
    if (sigma.history.size() != 2)
        throw PreconditionError("carrier needs a two-round history; got " + std::to_string(sigma.history.size()));
    ProcessSet out;
    for (auto b : view_in_osp(a, sigma.history[1]))
        out |= view_in_osp(b, sigma.history[0]);
    return out;
}

std::vector<ProcessSet> contention_sets(const SubdividedFacet& sigma)
{
    const int n = sigma.base.dimension();
    std::vector<ProcessSet> carriers;
    for (ProcessId a = 0; a <= n; ++a)
        carriers.push_back(carrier(a, sigma));
    std::vector<ProcessSet> out;
    for (auto group : nonempty_subsets(n)) {
        ProcessSet joined;
        for (auto b : group)
            joined |= carriers[static_cast<std::size_t>(b)];
        bool ok = true;
        for (auto a : group)
            ok = ok && carriers[static_cast<std::size_t>(a)] == joined;
        if (ok)
            out.push_back(group);
    }
    return out;
}

ProtocolModel k_concurrency_model(int n, int k, std::size_t limit)
{
    check_k(n, k);
    return restrict_protocol(protocol_model_iis(n, 2, limit), [k](const SubdividedFacet& s) {
        for (auto group : contention_sets(s))
            if (group.size() > k)
                return false;
        return true;
    });
}

}  // namespace epimu
