#include <gtest/gtest.h>

#include <map>
#include <set>

#include "epimu/errors.hpp"
#include "epimu/osp.hpp"
#include "epimu/subdivision.hpp"

using namespace epimu;

namespace {

std::uint64_t fubini_oracle(int k)
{
    std::vector<std::uint64_t> a(static_cast<std::size_t>(k) + 1, 0);
    a[0] = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t binom = 1;
        for (int j = 1; j <= i; ++j) {
            binom = binom * static_cast<std::uint64_t>(i - j + 1) / static_cast<std::uint64_t>(j);
            a[static_cast<std::size_t>(i)] += binom * a[static_cast<std::size_t>(i - j)];
        }
    }
    return a[static_cast<std::size_t>(k)];
}

Simplex facet(std::vector<int> values)
{
    std::vector<Vertex> vs;
    for (std::size_t a = 0; a < values.size(); ++a)
        vs.push_back({static_cast<ProcessId>(a), Value::base(values[a])});
    return Simplex(std::move(vs));
}

std::vector<Simplex> all_inputs(int n)
{
    std::vector<Simplex> out;
    std::vector<int> v(static_cast<std::size_t>(n) + 1, 0);
    for (;;) {
        out.push_back(facet(v));
        std::size_t i = 0;
        while (i < v.size() && ++v[i] > n)
            v[i++] = 0;
        if (i == v.size())
            return out;
    }
}

std::vector<std::vector<Osp>> histories(const std::vector<Osp>& rounds, int m)
{
    std::vector<std::vector<Osp>> out{{}};
    for (int i = 0; i < m; ++i) {
        std::vector<std::vector<Osp>> next;
        for (const auto& h : out)
            for (const auto& g : rounds) {
                auto e = h;
                e.push_back(g);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

Osp P(const char* s) { return Osp::parse(s); }

}  // namespace

TEST(Osp, FubiniCountsMatchRecurrence)
{
    const std::uint64_t expected[] = {1, 3, 13, 75};
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(enumerate_osp(n).size(), expected[n]);
        EXPECT_EQ(enumerate_osp(n).size(), fubini_oracle(n + 1));
    }
    EXPECT_EQ(enumerate_osp(4).size(), fubini_oracle(5));
}

TEST(Osp, EnumerationIsDistinctAndDeterministic)
{
    auto a = enumerate_osp(3);
    std::set<Osp> s(a.begin(), a.end());
    EXPECT_EQ(s.size(), a.size());
    EXPECT_EQ(a, enumerate_osp(3));
    EXPECT_EQ(enumerate_osp(0).front(), P("<0>"));
}

TEST(Osp, SmallEnumerations)
{
    auto e1 = enumerate_osp(1);
    std::set<Osp> n1(e1.begin(), e1.end());
    EXPECT_EQ(n1, (std::set<Osp>{P("<0|1>"), P("<1|0>"), P("<0,1>")}));

    auto t12 = enumerate_osp_tail(1, 2);
    std::set<Osp> tail(t12.begin(), t12.end());
    EXPECT_EQ(tail, (std::set<Osp>{P("<0|1|2>"), P("<1|0|2>"), P("<0,1|2>")}));
    EXPECT_EQ(enumerate_osp_tail(2, 2), enumerate_osp(2));
    for (int n = 0; n <= 3; ++n) {
        ASSERT_EQ(enumerate_osp_tail(0, n).size(), 1u);
        std::vector<ProcessSet> seq;
        for (int a = 0; a <= n; ++a)
            seq.push_back(ProcessSet::singleton(a));
        EXPECT_EQ(enumerate_osp_tail(0, n).front(), Osp(n, seq));
    }
}

TEST(Osp, ParseAndPrint)
{
    EXPECT_EQ(P("< 0 , 1 | 2 >").to_string(), "<0,1|2>");
    EXPECT_THROW(P("<0|0>"), ParseError);
    EXPECT_THROW(P("<0|2>"), ParseError);
    EXPECT_THROW(P("<0,1"), ParseError);
    EXPECT_THROW(Osp(1, {ProcessSet{0}, ProcessSet{}}), PreconditionError);
}

TEST(Osp, ViewInOsp)
{
    EXPECT_EQ(view_in_osp(0, P("<0|1|2>")), ProcessSet{0});
    EXPECT_EQ(view_in_osp(2, P("<0|1|2>")), (ProcessSet{0, 1, 2}));
    EXPECT_EQ(view_in_osp(1, P("<0,1|2>")), (ProcessSet{0, 1}));
}

TEST(Flip, SplitPlacesSingletonBeforeRest)
{
    // Splitting b after its block would change what A sees; the ~A-adjacent order runs b first.
    EXPECT_EQ(flip(ProcessSet{0}, P("<0,1|2>")), P("<1|0|2>"));
    EXPECT_EQ(flip(ProcessSet{1}, P("<0,1|2>")), P("<0|1|2>"));
    EXPECT_EQ(flip(ProcessSet{0, 2}, P("<0,1,2>")), P("<1|0,2>"));
    EXPECT_EQ(flip(ProcessSet{0, 1}, P("<1|0,2>")), P("<1|2|0>"));
    EXPECT_EQ(flip(ProcessSet{0, 2}, P("<0|1|2>")), P("<0|1,2>"));
    EXPECT_EQ(flip(ProcessSet{1}, P("<0|1|2>")), P("<0,1|2>"));
}

TEST(Flip, UndefinedWhenBIsLast)
{
    EXPECT_THROW(flip(ProcessSet{0}, P("<0|1|2>")), UndefinedFlipError);
    EXPECT_THROW(flip(ProcessSet{0, 1}, P("<0|1|2>")), UndefinedFlipError);
    EXPECT_THROW(flip(ProcessSet{0, 1}, P("<1|0|2>")), UndefinedFlipError);
    EXPECT_THROW(flip(ProcessSet{0, 3}, P("<0|1|2>")), PreconditionError);
    EXPECT_THROW(flip(ProcessSet{1}, P("<0|2|1>")), PreconditionError);
}

TEST(Flip, InvolutionAndTailPreserved)
{
    for (int n = 0; n <= 3; ++n)
        for (int d = 1; d <= n; ++d)
            for (ProcessId b = 0; b <= d; ++b) {
                ProcessSet group = ProcessSet::range(0, d) - ProcessSet::singleton(b);
                for (const auto& g : enumerate_osp_tail(d, n)) {
                    Osp f(0, {ProcessSet{0}});
                    try {
                        f = flip(group, g);
                    } catch (const UndefinedFlipError&) {
                        continue;
                    }
                    EXPECT_TRUE(has_tail_form(f, d)) << g.to_string();
                    EXPECT_NE(f, g);
                    EXPECT_EQ(flip(group, f), g) << g.to_string();
                }
            }
}

TEST(Subdivision, SingleRoundViews)
{
    Simplex x = facet({2, 0, 1});
    Simplex full = subdivide_facet(x, P("<0,1,2>"));
    for (ProcessId a = 0; a <= 2; ++a)
        EXPECT_EQ(unfold_view(view_of(a, full)).size(), 3u);

    Simplex seq = subdivide_facet(x, P("<0|1|2>"));
    for (ProcessId a = 0; a <= 2; ++a) {
        auto seen = unfold_view(view_of(a, seq));
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(a) + 1);
        for (const auto& [b, v] : seen)
            EXPECT_EQ(v, view_of(b, x));
    }
    EXPECT_THROW(subdivide_facet(facet({0, 1}), P("<0|1|2>")), PreconditionError);
}

TEST(Subdivision, IteratedMatchesSingle)
{
    Simplex x = facet({1, 1, 0});
    for (const auto& g : enumerate_osp(2))
        EXPECT_EQ(iterated_subdivision(x, {g}).realized, subdivide_facet(x, g));
    EXPECT_THROW(iterated_subdivision(x, {}), PreconditionError);
}

TEST(Subdivision, HistoriesGiveDistinctFacets)
{
    for (int n = 0; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m) {
            Simplex x = all_inputs(n).back();
            std::set<Simplex> realized;
            auto hs = histories(enumerate_osp(n), m);
            for (const auto& h : hs) {
                auto s = iterated_subdivision(x, h);
                EXPECT_EQ(chi(s.realized), ProcessSet::all(n));
                realized.insert(s.realized);
            }
            EXPECT_EQ(realized.size(), hs.size());
        }
    EXPECT_EQ(histories(enumerate_osp(2), 2).size(), 169u);
}

// Brute force over realized vertex sets: tau ~A sigma iff they share every A-colored vertex.
TEST(Incidence, MatchesBruteForceNeighbors)
{
    std::size_t checked = 0;
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int d = 1; d <= n; ++d) {
                std::vector<SubdividedFacet> domain;
                for (const auto& x : all_inputs(n))
                    for (const auto& h : histories(enumerate_osp_tail(d, n), m))
                        domain.push_back(iterated_subdivision(x, h));
                for (ProcessId b = 0; b <= d; ++b) {
                    ProcessSet group = ProcessSet::range(0, d) - ProcessSet::singleton(b);
                    std::map<std::vector<Value>, std::vector<std::size_t>> buckets;
                    for (std::size_t i = 0; i < domain.size(); ++i) {
                        std::vector<Value> key;
                        for (auto a : group)
                            key.push_back(view_of(a, domain[i].realized));
                        buckets[key].push_back(i);
                    }
                    for (const auto& [key, members] : buckets)
                        for (auto i : members) {
                            std::vector<SubdividedFacet> expected;
                            for (auto j : members)
                                if (j != i)
                                    expected.push_back(domain[j]);
                            std::sort(expected.begin(), expected.end());
                            auto got = incident_by_osp(domain[i], group, d, b);
                            ASSERT_EQ(got, expected) << "n=" << n << " m=" << m << " d=" << d << " b=" << b
                                                     << " sigma=" << domain[i].name();
                            ++checked;
                        }
                }
            }
    EXPECT_GT(checked, 1000u);
}

TEST(Incidence, IncludeSelfAndPreconditions)
{
    auto s = iterated_subdivision(facet({0, 1, 1}), {P("<0,1|2>")});
    auto with = incident_by_osp(s, ProcessSet{0}, 1, 1, true);
    EXPECT_NE(std::find(with.begin(), with.end(), s), with.end());
    auto without = incident_by_osp(s, ProcessSet{0}, 1, 1);
    EXPECT_EQ(with.size(), without.size() + 1);
    EXPECT_THROW(incident_by_osp(s, ProcessSet{1}, 1, 1), PreconditionError);
    auto bad = iterated_subdivision(facet({0, 1, 1}), {P("<0,2|1>")});
    EXPECT_THROW(incident_by_osp(bad, ProcessSet{0}, 1, 1), PreconditionError);
}
