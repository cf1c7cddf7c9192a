#include "epimu/fd.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "epimu/errors.hpp"
#include "epimu/eval.hpp"
#include "epimu/formulas.hpp"

namespace epimu {

Simplex corner_input(int n, int d)
{
    if (d < 0 || d > n)
        throw PreconditionError("I_d needs 0 <= d <= n");
    std::vector<Vertex> vs;
    for (ProcessId i = 0; i <= n; ++i)
        vs.push_back({i, Value::base(i <= d ? i : d)});
    return Simplex(std::move(vs));
}

FdCollection build_fd(int n, int m, int d)
{
    if (m < 1)
        throw PreconditionError("F_d needs at least one round");
    const Simplex base = corner_input(n, d);
    auto histories = round_histories(enumerate_osp_tail(d, n), m);
    FdCollection out{d, {}};
    for (auto& h : histories)
        out.facets.push_back(iterated_subdivision(base, std::move(h)));
    return out;
}

ProtocolModel fd_union_model(int n, int m, int k)
{
    if (k < 0)
        throw PreconditionError("k must be nonnegative");
    std::vector<SubdividedFacet> facets;
    for (int d = 0; d <= std::min(k, n); ++d) {
        auto fd = build_fd(n, m, d);
        facets.insert(facets.end(), fd.facets.begin(), fd.facets.end());
    }
    return ProtocolModel(n, m, std::move(facets));
}

BowtieFrame::BowtieFrame(std::shared_ptr<const ProtocolModel> p, int k) : p_(std::move(p)), k_(k)
{
    if (!p_)
        throw PreconditionError("bowtie frame needs a protocol model");
    const int n = p_->n;
    if (k < 1 || k > n + 1)
        throw PreconditionError("k must lie in [1, n+1]");
    const int top = std::min(k, n);

    level_.assign(p_->facets.size(), -1);
    std::vector<Simplex> corners;
    for (int d = 0; d <= top; ++d)
        corners.push_back(corner_input(n, d));
    std::vector<std::size_t> per_level(static_cast<std::size_t>(top) + 1, 0);
    for (StateId s = 0; s < p_->facets.size(); ++s) {
        const auto& f = p_->facets[s];
        for (int d = 0; d <= top; ++d)
            if (f.base == corners[static_cast<std::size_t>(d)]
                && std::all_of(f.history.begin(), f.history.end(), [d](const Osp& g) { return has_tail_form(g, d); })) {
                level_[s] = d;
                ++per_level[static_cast<std::size_t>(d)];
                nodes_.push_back(s);
            }
    }
    for (int d = 0; d <= top; ++d) {
        std::size_t expected = 1;
        for (int i = 0; i < p_->m; ++i)
            expected *= enumerate_osp_tail(d, n).size();
        if (per_level[static_cast<std::size_t>(d)] != expected)
            throw PreconditionError("protocol model lacks part of F_" + std::to_string(d));
    }
    std::sort(nodes_.begin(), nodes_.end(), [&](StateId a, StateId b) {
        if (level_[a] != level_[b])
            return level_[a] < level_[b];
        return p_->facets[a] < p_->facets[b];
    });

    for (auto group : nonempty_subsets(n))
        if (group.subset_of(ProcessSet::range(0, group.size())))
            groups_.push_back(group);

    candidates_.resize(p_->facets.size());
    const Frame& f = *p_->frame;
    for (StateId s : nodes_) {
        auto& out = candidates_[s];
        const int d = level_[s];
        for (StateId t : nodes_) {
            const int e = level_[t];
            const int size = std::max(d, e);
            if (t == s || std::abs(d - e) > 1 || size < 1)
                continue;
            for (ProcessId b = 0; b <= size; ++b) {
                const ProcessSet group = ProcessSet::range(0, size) - ProcessSet::singleton(b);
                if (f.related(group, s, t))
                    out.push_back({t, group});
            }
        }
        std::sort(out.begin(), out.end(), [&](const BowtieEdge& x, const BowtieEdge& y) {
            if (x.to != y.to)
                return p_->facets[x.to] < p_->facets[y.to];
            return x.group < y.group;
        });
    }
}

BowtieGraph::BowtieGraph(std::shared_ptr<const ProtocolModel> p, SimplicialModel labeled, int k)
    : BowtieGraph(std::make_shared<const BowtieFrame>(std::move(p), k), std::move(labeled))
{
}

BowtieGraph::BowtieGraph(std::shared_ptr<const BowtieFrame> frame, SimplicialModel labeled)
    : frame_(std::move(frame)), labeled_(std::move(labeled))
{
    if (labeled_.frame_ptr() != frame_->protocol().frame)
        throw PreconditionError("the labeled model must share the protocol's frame");
    const int n = frame_->protocol().n;
    for (auto group : frame_->groups())
        dec_.push_back(eval(labeled_, {}, dec(group)));
    auto& fam = formula_family();
    ofun_ = eval(labeled_, {}, fam.get("ofun", n));
    valid_ = eval(labeled_, {}, fam.get("valid", n));
    agree_ = eval(labeled_, {}, fam.get("agree", n, k()));
    know_ = eval(labeled_, {}, fam.get("know", n));
}

const StateSet& BowtieGraph::dec_states(ProcessSet group) const
{
    const auto& gs = frame_->groups();
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (gs[i] == group)
            return dec_[i];
    throw PreconditionError("group " + group.to_string() + " is not a subset of [0,|A|]");
}

bool BowtieGraph::bowtie(StateId s, StateId t, ProcessSet group) const
{
    if (s >= frame_->protocol().facets.size() || level(s) < 0)
        return false;
    for (const auto& e : frame_->candidates(s))
        if (e.to == t && e.group == group) {
            const StateSet& ds = dec_states(group);
            return ds.test(s) && ds.test(t);
        }
    return false;
}

bool BowtieGraph::bowtie(const SubdividedFacet& s, const SubdividedFacet& t, ProcessSet group) const
{
    auto i = protocol().find(s), j = protocol().find(t);
    if (!i || !j)
        throw StateNotInModelError("facet is not a state of the protocol model");
    return bowtie(*i, *j, group);
}

std::vector<BowtieEdge> BowtieGraph::edges(StateId s) const
{
    std::vector<BowtieEdge> out;
    if (level(s) < 0)
        return out;
    for (const auto& e : frame_->candidates(s)) {
        const StateSet& ds = dec_states(e.group);
        if (ds.test(s) && ds.test(e.to))
            out.push_back(e);
    }
    return out;
}

std::size_t BowtieGraph::degree(StateId s) const
{
    auto es = edges(s);
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < es.size(); ++i)
        if (i == 0 || es[i].to != es[i - 1].to)
            ++distinct;
    return distinct;
}

bool BowtieGraph::degree_preconditions(StateId s) const
{
    const int d = level(s);
    return d >= 1 && d <= k() && model_valid() && ofun_at(s) && valid_at(s) && agree_at(s) && know_at(s);
}

std::size_t bowtie_degree(const BowtieGraph& g, StateId s)
{
    if (!g.degree_preconditions(s)) {
        std::string why;
        const int d = g.level(s);
        if (d < 1 || d > g.k())
            why = "facet is not in F_d with 1 <= d <= k";
        else if (!g.model_valid())
            why = "VALID is not valid in the model";
        else
            why = "OFUN & VALID & AGREE_k & KNOW fails at the facet";
        throw PreconditionError("bowtie_degree: " + why + " (" + g.protocol().facets.at(s).name() + ")");
    }
    return g.degree(s);
}

std::string to_string(PathReport::Mode m)
{
    switch (m) {
    case PathReport::Mode::Contradiction:
        return "contradiction";
    case PathReport::Mode::FormulaFailure:
        return "formula-failure";
    case PathReport::Mode::Boundary:
        return "boundary";
    case PathReport::Mode::MaxLength:
        return "max-length";
    }
    return "?";
}

PathReport witness_path(const BowtieGraph& g, std::size_t max_len)
{
    PathReport r;
    r.bound = g.nodes().size();
    const StateSet phi_set = eval(g.model(), {}, formula_family().get("phi", g.protocol().n, g.k()));
    std::vector<bool> visited(g.protocol().facets.size(), false);

    PathStep step{g.sigma0(), std::nullopt};
    for (;;) {
        const StateId s = step.state;
        visited[s] = true;
        r.steps.push_back(step);
        r.phi_holds.push_back(phi_set.test(s));

        if (!g.ofun_at(s))
            r.failing.push_back("OFUN");
        if (!g.valid_at(s))
            r.failing.push_back("VALID");
        if (r.steps.size() > 1) {
            if (!g.agree_at(s))
                r.failing.push_back("AGREE");
            if (!g.know_at(s))
                r.failing.push_back("KNOW");
        }
        if (!r.failing.empty()) {
            r.mode = PathReport::Mode::FormulaFailure;
            return r;
        }
        if (r.steps.size() > r.bound) {
            r.mode = PathReport::Mode::Contradiction;
            return r;
        }
        if (max_len && r.steps.size() >= max_len) {
            r.mode = PathReport::Mode::MaxLength;
            return r;
        }
        std::optional<PathStep> next;
        for (const auto& e : g.edges(s))
            if (!visited[e.to]) {
                next = PathStep{e.to, e.group};
                break;
            }
        if (!next) {
            r.mode = PathReport::Mode::Boundary;
            return r;
        }
        step = *next;
    }
}

namespace {

void survey_one(const std::shared_ptr<const BowtieFrame>& frame, const DecisionMap& labeling, DegreeSurvey& acc)
{
    BowtieGraph g(frame, decision_labeled(frame->protocol(), labeling));
    ++acc.labelings;
    std::size_t odd = 0;
    bool failing_odd = false;
    for (StateId s : g.nodes()) {
        const std::size_t deg = g.degree(s);
        if (deg % 2 == 1) {
            ++odd;
            if (s != g.sigma0() && !g.degree_preconditions(s))
                failing_odd = true;
        }
        if (g.degree_preconditions(s)) {
            ++acc.checked;
            acc.zero += deg == 0;
            acc.two += deg == 2;
        }
    }
    if (odd % 2 == 1)
        ++acc.parity_failures;
    const StateId s0 = g.sigma0();
    if (g.ofun_at(s0) && g.valid_at(s0)) {
        ++acc.sigma0_checked;
        if (g.degree(s0) == 1) {
            ++acc.sigma0_one;
            if (!failing_odd)
                ++acc.unmatched_sigma0;
        }
    }
}

void merge(DegreeSurvey& into, const DegreeSurvey& from)
{
    into.labelings += from.labelings;
    into.checked += from.checked;
    into.zero += from.zero;
    into.two += from.two;
    into.sigma0_checked += from.sigma0_checked;
    into.sigma0_one += from.sigma0_one;
    into.parity_failures += from.parity_failures;
    into.unmatched_sigma0 += from.unmatched_sigma0;
}

}  // namespace

DegreeSurvey survey_degrees(
    const std::shared_ptr<const BowtieFrame>& frame, const std::vector<DecisionMap>& labelings, Execution ex)
{
    DegreeSurvey total;
    if (ex == Execution::Serial) {
        for (const auto& l : labelings)
            survey_one(frame, l, total);
        return total;
    }
#pragma omp parallel
    {
        DegreeSurvey local;
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(labelings.size()); ++i)
            survey_one(frame, labelings[static_cast<std::size_t>(i)], local);
#pragma omp critical
        merge(total, local);
    }
    return total;
}

std::vector<DecisionMap> all_view_labelings(const ProtocolModel& p, std::size_t limit)
{
    const std::size_t nv = p.frame->num_vertexes();
    std::uint64_t total = 1;
    for (std::size_t v = 0; v < nv; ++v) {
        total *= static_cast<std::uint64_t>(std::popcount(p.seen_values[v]));
        if (total > limit)
            throw ResourceLimitError("view labelings", total, limit);
    }
    std::vector<DecisionMap> out;
    out.reserve(total);
    DecisionMap cur(nv);
    for (std::size_t v = 0; v < nv; ++v)
        cur[v] = std::countr_zero(p.seen_values[v]);
    for (;;) {
        out.push_back(cur);
        std::size_t v = 0;
        for (; v < nv; ++v) {
            // Next seen value above cur[v], or wrap to the lowest.
            const std::uint32_t above = p.seen_values[v] & ~((std::uint32_t{2} << cur[v]) - 1);
            if (above) {
                cur[v] = std::countr_zero(above);
                break;
            }
            cur[v] = std::countr_zero(p.seen_values[v]);
        }
        if (v == nv)
            return out;
    }
}

std::vector<DecisionMap> random_view_labelings(const ProtocolModel& p, std::size_t count, std::uint64_t seed)
{
    const std::size_t nv = p.frame->num_vertexes();
    std::vector<DecisionMap> out(count, DecisionMap(nv));
    for (std::size_t i = 0; i < count; ++i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 rng(seq);
        for (std::size_t v = 0; v < nv; ++v) {
            const std::uint32_t mask = p.seen_values[v];
            int pick = std::uniform_int_distribution<int>(0, std::popcount(mask) - 1)(rng);
            std::uint32_t m = mask;
            while (pick-- > 0)
                m &= m - 1;
            out[i][v] = std::countr_zero(m);
        }
    }
    return out;
}

}  // namespace epimu
