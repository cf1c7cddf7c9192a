#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "epimu/errors.hpp"
#include "epimu/eval.hpp"
#include "epimu/fd.hpp"
#include "epimu/formulas.hpp"

using namespace epimu;

namespace {

std::size_t fubini(int n)
{
    // Ordered set partitions of an n-set, counted by first-block size.
    std::vector<std::size_t> f(static_cast<std::size_t>(n) + 1, 0);
    f[0] = 1;
    for (int i = 1; i <= n; ++i) {
        std::size_t c = 1;
        for (int j = 1; j <= i; ++j) {
            c = c * static_cast<std::size_t>(i - j + 1) / static_cast<std::size_t>(j);
            f[static_cast<std::size_t>(i)] += c * f[static_cast<std::size_t>(i - j)];
        }
    }
    return f[static_cast<std::size_t>(n)];
}

struct Setup {
    std::shared_ptr<const ProtocolModel> p;
    std::shared_ptr<const BowtieFrame> frame;
};

Setup setup(int n, int m, int k)
{
    auto p = std::make_shared<const ProtocolModel>(fd_union_model(n, m, k));
    return {p, std::make_shared<const BowtieFrame>(p, k)};
}

/// Level of a state read off its base and rounds, or -1.
int level_oracle(const SubdividedFacet& s, int top)
{
    const int n = s.base.dimension();
    for (int d = 0; d <= top; ++d) {
        bool base_ok = true;
        for (ProcessId a = 0; a <= n; ++a)
            base_ok = base_ok && view_of(a, s.base).as_base() == std::min(a, d);
        bool tail_ok = true;
        for (const auto& g : s.history) {
            // Blocks covering [0,d] first, then the singletons d+1..n.
            std::size_t i = 0;
            ProcessSet covered;
            while (i < g.num_blocks() && covered != ProcessSet::range(0, d))
                covered |= g.blocks()[i++];
            tail_ok = tail_ok && covered == ProcessSet::range(0, d) && g.num_blocks() - i == static_cast<std::size_t>(n - d);
            for (ProcessId a = d + 1; i < g.num_blocks(); ++i, ++a)
                tail_ok = tail_ok && g.blocks()[i] == ProcessSet::singleton(a);
        }
        if (base_ok && tail_ok)
            return d;
    }
    return -1;
}

/// The >< relation straight from its definition, as sorted (tau, A) lists per state.
std::map<StateId, std::vector<std::pair<StateId, std::uint32_t>>> bowtie_oracle(
    const ProtocolModel& p, const SimplicialModel& labeled, int k)
{
    const int n = p.n;
    const int top = std::min(k, n);
    const Frame& f = *p.frame;
    std::map<StateId, std::vector<std::pair<StateId, std::uint32_t>>> out;
    std::map<std::uint32_t, StateSet> decs;
    for (ProcessSet g : nonempty_subsets(n))
        decs.emplace(g.bits(), eval(labeled, {}, dec(g)));
    for (StateId s = 0; s < f.num_states(); ++s) {
        const int d = level_oracle(p.facets[s], top);
        if (d < 0)
            continue;
        auto& list = out[s];
        for (StateId t = 0; t < f.num_states(); ++t) {
            const int e = level_oracle(p.facets[t], top);
            if (e < 0 || t == s || std::abs(d - e) > 1)
                continue;
            for (ProcessSet g : nonempty_subsets(n)) {
                if (g.size() != std::max(d, e) || !g.subset_of(ProcessSet::range(0, g.size())))
                    continue;
                if (f.related(g, s, t) && decs.at(g.bits()).test(s) && decs.at(g.bits()).test(t))
                    list.emplace_back(t, g.bits());
            }
        }
        std::sort(list.begin(), list.end());
    }
    return out;
}

}  // namespace

TEST(Fd, CollectionCounts)
{
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int d = 0; d <= n; ++d) {
                auto fd = build_fd(n, m, d);
                std::size_t want = 1;
                for (int i = 0; i < m; ++i)
                    want *= fubini(d + 1);
                EXPECT_EQ(fd.facets.size(), want) << n << m << d;
                for (const auto& s : fd.facets)
                    EXPECT_EQ(level_oracle(s, n), d) << s.name();
            }
    EXPECT_EQ(build_fd(2, 1, 1).facets.size(), 3u);
    EXPECT_EQ(build_fd(2, 2, 1).facets.size(), 9u);
    EXPECT_EQ(corner_input(2, 1), (Simplex({{0, Value::base(0)}, {1, Value::base(1)}, {2, Value::base(1)}})));
}

TEST(Fd, FrameLevelsAndGuards)
{
    auto [p, frame] = setup(2, 2, 2);
    EXPECT_EQ(frame->nodes().size(), 1u + 9u + 169u);
    for (StateId s = 0; s < p->facets.size(); ++s)
        EXPECT_EQ(frame->level(s), level_oracle(p->facets[s], 2));
    EXPECT_EQ(frame->level(frame->sigma0()), 0);
    EXPECT_THROW(BowtieFrame(p, 0), PreconditionError);
    auto thin = std::make_shared<const ProtocolModel>(restrict_protocol(*p, [](const SubdividedFacet& s) {
        return s.history[0].num_blocks() == 3;
    }));
    EXPECT_THROW(BowtieFrame(thin, 2), PreconditionError);
}

TEST(Fd, BowtieMatchesDefinition)
{
    for (auto [m, k] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        auto [p, frame] = setup(2, m, k);
        auto labelings = random_view_labelings(*p, 30, 99);
        // Add labelings with missing decisions.
        auto holes = labelings.front();
        for (std::size_t v = 0; v < holes.size(); v += 3)
            holes[v] = -1;
        labelings.push_back(holes);
        for (const auto& l : labelings) {
            auto labeled = decision_labeled(*p, l);
            BowtieGraph g(frame, labeled);
            auto want = bowtie_oracle(*p, labeled, k);
            for (StateId s : g.nodes()) {
                std::vector<std::pair<StateId, std::uint32_t>> got;
                std::set<StateId> ends;
                for (const auto& e : g.edges(s)) {
                    got.emplace_back(e.to, e.group.bits());
                    ends.insert(e.to);
                    EXPECT_TRUE(g.bowtie(s, e.to, e.group));
                    EXPECT_TRUE(g.bowtie(e.to, s, e.group));
                }
                std::sort(got.begin(), got.end());
                ASSERT_EQ(got, want.at(s)) << "m=" << m << " k=" << k << " " << p->facets[s].name();
                EXPECT_EQ(g.degree(s), ends.size());
            }
        }
    }
}

TEST(Fd, SigmaZeroHasOneNeighbor)
{
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m) {
            if (n == 3 && m == 2)
                continue;
            auto fd0 = build_fd(n, m, 0);
            ASSERT_EQ(fd0.facets.size(), 1u);
            auto [p, frame] = setup(n, m, 1);
            EXPECT_EQ(p->facets[frame->sigma0()], fd0.facets[0]);
            for (const auto& l : random_view_labelings(*p, 50, 5)) {
                BowtieGraph g(frame, decision_labeled(*p, l));
                ASSERT_TRUE(g.ofun_at(g.sigma0()) && g.valid_at(g.sigma0()));
                EXPECT_EQ(g.degree(g.sigma0()), 1u) << n << m;
                auto e = g.edges(g.sigma0());
                ASSERT_EQ(e.size(), 1u);
                EXPECT_EQ(e[0].group, ProcessSet{0});
                EXPECT_EQ(g.level(e[0].to), 1);
            }
        }
}

TEST(Fd, PropTwoExhaustiveOneRound)
{
    for (int k = 1; k <= 2; ++k) {
        auto [p, frame] = setup(2, 1, k);
        auto all = all_view_labelings(*p, 1'000'000);
        std::size_t want = 1;
        for (auto mask : p->seen_values)
            want *= static_cast<std::size_t>(std::popcount(mask));
        ASSERT_EQ(all.size(), want);
        std::set<DecisionMap> distinct(all.begin(), all.end());
        EXPECT_EQ(distinct.size(), all.size());
        auto sv = survey_degrees(frame, all, Execution::Serial);
        EXPECT_EQ(sv.labelings, all.size());
        EXPECT_GT(sv.checked, 0u);
        EXPECT_TRUE(sv.degrees_zero_or_two()) << "k=" << k << " checked " << sv.checked << " zero " << sv.zero << " two " << sv.two;
        EXPECT_EQ(sv.sigma0_one, sv.sigma0_checked);
        EXPECT_EQ(sv.parity_failures, 0u);
        EXPECT_EQ(sv.unmatched_sigma0, 0u);
        auto par = survey_degrees(frame, all, Execution::Parallel);
        EXPECT_EQ(par.checked, sv.checked);
        EXPECT_EQ(par.two, sv.two);
        EXPECT_EQ(par.zero, sv.zero);
    }
    EXPECT_THROW(all_view_labelings(*setup(2, 2, 2).p, 1000), ResourceLimitError);
}

TEST(Fd, PropTwoRandomTwoRounds)
{
    for (int k = 1; k <= 2; ++k) {
        auto [p, frame] = setup(2, 2, k);
        auto ls = random_view_labelings(*p, 10'000, 2024 + static_cast<std::uint64_t>(k));
        auto sv = survey_degrees(frame, ls, Execution::Parallel);
        EXPECT_EQ(sv.labelings, 10'000u);
        EXPECT_TRUE(sv.degrees_zero_or_two());
        EXPECT_EQ(sv.sigma0_one, sv.sigma0_checked);
        EXPECT_EQ(sv.unmatched_sigma0, 0u);
    }
}

TEST(Fd, RandomLabelingsAreSeededAndAdmissible)
{
    auto [p, frame] = setup(2, 2, 2);
    auto a = random_view_labelings(*p, 20, 1);
    auto b = random_view_labelings(*p, 20, 1);
    auto c = random_view_labelings(*p, 20, 2);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    // Sample i does not depend on how many samples are drawn.
    EXPECT_EQ(random_view_labelings(*p, 5, 1)[4], a[4]);
    for (const auto& l : a)
        for (std::size_t v = 0; v < l.size(); ++v)
            EXPECT_TRUE((p->seen_values[v] >> l[v]) & 1u);
}

TEST(Fd, DegreePreconditions)
{
    auto [p, frame] = setup(2, 1, 2);
    DecisionMap none(p->frame->num_vertexes(), -1);
    BowtieGraph g(frame, decision_labeled(*p, none));
    EXPECT_FALSE(g.model_valid() && g.ofun_at(g.sigma0()));
    for (StateId s : g.nodes()) {
        EXPECT_FALSE(g.degree_preconditions(s));
        EXPECT_THROW(bowtie_degree(g, s), PreconditionError);
        EXPECT_EQ(g.degree(s), 0u);
    }
}

TEST(Witness, ConsensusPathEndsInFailure)
{
    for (int m = 1; m <= 2; ++m) {
        auto [p, frame] = setup(2, m, 1);
        for (const auto& l : random_view_labelings(*p, 40, 77)) {
            BowtieGraph g(frame, decision_labeled(*p, l));
            auto r = witness_path(g);
            ASSERT_FALSE(r.steps.empty());
            EXPECT_EQ(r.steps.front().state, g.sigma0());
            EXPECT_FALSE(r.steps.front().via.has_value());
            EXPECT_EQ(r.phi_holds.size(), r.steps.size());
            EXPECT_EQ(r.bound, frame->nodes().size());
            std::set<StateId> seen;
            for (std::size_t i = 0; i < r.steps.size(); ++i) {
                EXPECT_TRUE(seen.insert(r.steps[i].state).second);
                if (i > 0) {
                    ASSERT_TRUE(r.steps[i].via.has_value());
                    EXPECT_TRUE(g.bowtie(r.steps[i - 1].state, r.steps[i].state, *r.steps[i].via));
                }
            }
            // Every labeling of a consensus attempt fails somewhere along the path, never at
            // a dead end.
            EXPECT_EQ(r.mode, PathReport::Mode::FormulaFailure) << to_string(r.mode);
            EXPECT_FALSE(r.failing.empty());
            const StateId last = r.steps.back().state;
            for (const auto& name : r.failing) {
                if (name == "AGREE")
                    EXPECT_FALSE(g.agree_at(last));
                if (name == "KNOW")
                    EXPECT_FALSE(g.know_at(last));
            }
            EXPECT_FALSE(r.phi_holds.front() && r.phi_holds.back() && r.steps.size() > 1 && r.failing.empty());
        }
    }
}

TEST(Witness, Modes)
{
    auto [p, frame] = setup(2, 1, 1);
    DecisionMap none(p->frame->num_vertexes(), -1);
    auto r0 = witness_path(BowtieGraph(frame, decision_labeled(*p, none)));
    EXPECT_EQ(r0.mode, PathReport::Mode::FormulaFailure);
    EXPECT_EQ(r0.steps.size(), 1u);
    EXPECT_EQ(r0.failing, std::vector<std::string>{"OFUN"});

    auto own = DecisionMap(p->own_input.begin(), p->own_input.end());
    BowtieGraph g(frame, decision_labeled(*p, own));
    auto r1 = witness_path(g, 1);
    EXPECT_EQ(r1.mode, PathReport::Mode::MaxLength);
    EXPECT_EQ(r1.steps.size(), 1u);

    // With two processes and two allowed values nothing fails, and the walk stops at the end of
    // the path through F_0 and F_1.
    auto [p2, frame2] = setup(1, 2, 2);
    auto own2 = DecisionMap(p2->own_input.begin(), p2->own_input.end());
    auto r2 = witness_path(BowtieGraph(frame2, decision_labeled(*p2, own2)));
    EXPECT_EQ(r2.mode, PathReport::Mode::Boundary);
    EXPECT_TRUE(r2.failing.empty());
    EXPECT_GT(r2.steps.size(), 1u);
    EXPECT_LE(r2.steps.size(), r2.bound);

    EXPECT_EQ(to_string(PathReport::Mode::Contradiction), "contradiction");
    EXPECT_EQ(to_string(PathReport::Mode::FormulaFailure), "formula-failure");
    EXPECT_EQ(to_string(PathReport::Mode::Boundary), "boundary");
    EXPECT_EQ(to_string(PathReport::Mode::MaxLength), "max-length");
}
