#include <gtest/gtest.h>

#include <random>
#include <set>

#include "epimu/errors.hpp"
#include "epimu/model.hpp"
#include "epimu/simplex.hpp"
#include "support.hpp"

using namespace epimu;
using epimu::testing::facet_of;

TEST(Value, StructuralEqualityAndOrder)
{
    Value a = Value::base(3);
    Value p = Value::pair(Value::base(1), Value::base(2));
    Value v = Value::view({{2, Value::base(0)}, {0, Value::base(1)}});
    EXPECT_EQ(p, Value::pair(Value::base(1), Value::base(2)));
    EXPECT_NE(p, Value::pair(Value::base(2), Value::base(1)));
    EXPECT_EQ(v.entries().front().process, 0);
    EXPECT_EQ(v.to_string(), "{0:1,2:0}");
    EXPECT_EQ(p.to_string(), "(1,2)");
    EXPECT_LT(a, p);
    EXPECT_LT(p, v);
    EXPECT_EQ(v.hash(), Value::view({{0, Value::base(1)}, {2, Value::base(0)}}).hash());
    EXPECT_THROW(Value::view({{1, a}, {1, a}}), PreconditionError);
}

TEST(Simplex, ChiAndViewOf)
{
    EXPECT_EQ(chi(Simplex()), ProcessSet());
    Simplex s({{0, Value::base(0)}, {2, Value::base(5)}});
    EXPECT_EQ(chi(s), (ProcessSet{0, 2}));
    EXPECT_EQ(view_of(0, Simplex({{0, Value::base(3)}, {1, Value::base(1)}})), Value::base(3));
    EXPECT_THROW(view_of(2, Simplex({{0, Value::base(3)}, {1, Value::base(1)}})), ColorAbsentError);
    EXPECT_THROW(Simplex({{1, Value::base(0)}, {1, Value::base(1)}}), PreconditionError);
    EXPECT_EQ(view_of(1, facet_of({0, 1, 2})), Value::base(1));
}

TEST(Simplex, Faces)
{
    EXPECT_EQ(faces(Simplex()).size(), 1u);
    auto edge = faces(facet_of({4, 7}));
    EXPECT_EQ(edge.size(), 4u);
    auto tri = faces(facet_of({0, 1, 2}));
    ASSERT_EQ(tri.size(), 8u);
    std::set<Simplex> fs(tri.begin(), tri.end());
    EXPECT_EQ(fs.size(), 8u);
    for (const auto& f : tri) {
        EXPECT_TRUE(f.is_face_of(facet_of({0, 1, 2})));
        for (const auto& g : tri) {
            EXPECT_TRUE(fs.contains(intersection(f, g)));
            if (f.is_face_of(g))
                for (const auto& h : faces(f))
                    EXPECT_TRUE(fs.contains(h));
        }
    }
}

TEST(Complex, DropsNonMaximal)
{
    Simplex x = facet_of({0, 1});
    Simplex v({{0, Value::base(0)}});
    Complex c(1, {x, v, x, Simplex()});
    EXPECT_EQ(c.num_facets(), 1u);
    EXPECT_TRUE(c.contains(v));
    EXPECT_TRUE(c.contains(Simplex()));
    EXPECT_FALSE(c.is_facet(v));
    EXPECT_TRUE(c.is_pure_chromatic());
}

TEST(Complex, CartesianProduct)
{
    std::vector<Simplex> in;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            in.push_back(facet_of({a, b}));
    Complex i1(1, in);
    Complex prod = cartesian_product(i1, i1);
    EXPECT_EQ(prod.num_facets(), 16u);
    for (const auto& f : prod.facets()) {
        EXPECT_EQ(chi(f), ProcessSet::all(1));
        for (const auto& v : f.vertexes())
            EXPECT_EQ(v.value.kind(), Value::Kind::Pair);
    }
    Complex one(1, {facet_of({0, 1})});
    Complex p1 = cartesian_product(one, Complex(1, {facet_of({1, 1})}));
    ASSERT_EQ(p1.num_facets(), 1u);
    EXPECT_EQ(view_of(0, p1.facets()[0]), Value::pair(Value::base(0), Value::base(1)));
    EXPECT_THROW(cartesian_product(one, Complex(2, {facet_of({0, 0, 0})})), ColorMismatchError);
}

TEST(Complex, ProductAssociativeOnCounts)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto rc = [&] {
            std::vector<Simplex> fs;
            int k = std::uniform_int_distribution<int>(1, 4)(rng);
            for (int i = 0; i < k; ++i)
                fs.push_back(facet_of({std::uniform_int_distribution<int>(0, 2)(rng),
                    std::uniform_int_distribution<int>(0, 2)(rng)}));
            return Complex(1, fs);
        };
        Complex c = rc(), d = rc(), e = rc();
        EXPECT_EQ(cartesian_product(cartesian_product(c, d), e).num_facets(),
            cartesian_product(c, cartesian_product(d, e)).num_facets());
    }
}

TEST(Complex, SimplicialMaps)
{
    epimu::testing::RunningExample fig;
    Complex c = fig.frame->complex();
    EXPECT_TRUE(is_simplicial_map([](const Vertex& v) { return v; }, c, c));
    EXPECT_FALSE(is_simplicial_map([](const Vertex& v) { return Vertex{(v.color + 1) % 3, v.value}; }, c, c));
    // Collapse Y's color-0 vertex onto W's color-2 value: {(0,2),(1,1),(2,2)} is not in C.
    auto collapse = [](const Vertex& v) {
        if (v.color == 0 && v.value == Value::base(1))
            return Vertex{0, Value::base(2)};
        return v;
    };
    EXPECT_FALSE(is_simplicial_map(collapse, c, c));
}

TEST(Frame, IndistIsEquivalenceAndDuality)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        SimplicialModel m = epimu::testing::random_model(rng, 30);
        const Frame& f = m.frame();
        const std::size_t s = f.num_states();
        for (ProcessId a = 0; a <= f.n(); ++a)
            for (StateId x = 0; x < s; ++x) {
                EXPECT_TRUE(f.indist(a, x, x));
                for (StateId y = 0; y < s; ++y) {
                    EXPECT_EQ(f.indist(a, x, y), f.indist(a, y, x));
                    for (StateId z = 0; z < s; ++z)
                        if (f.indist(a, x, y) && f.indist(a, y, z))
                            EXPECT_TRUE(f.indist(a, x, z));
                }
            }
        for (auto g : nonempty_subsets(f.n())) {
            const Partition& p = f.classes(g);
            for (StateId x = 0; x < s; ++x)
                for (StateId y = 0; y < s; ++y) {
                    const bool shared = g.subset_of(chi(intersection(f.state(x), f.state(y))));
                    EXPECT_EQ(f.related(g, x, y), shared);
                    EXPECT_EQ(p.class_of[x] == p.class_of[y], shared);
                }
        }
        EXPECT_THROW(f.classes(ProcessSet()), PreconditionError);
    }
}

TEST(Frame, RunningExampleRelations)
{
    epimu::testing::RunningExample fig;
    const Frame& f = *fig.frame;
    EXPECT_TRUE(f.related(ProcessSet{1}, 0, 2));
    EXPECT_TRUE(f.related(ProcessSet{1, 2}, 0, 1));
    EXPECT_FALSE(f.related(ProcessSet{1, 2}, 0, 2));
    EXPECT_TRUE(f.related(ProcessSet{0, 1}, 1, 2));
    EXPECT_EQ(f.related_pairs(ProcessSet{2}), (std::vector<std::pair<StateId, StateId>>{{0, 1}}));
    Simplex disjoint = facet_of({2, 0, 1});
    Frame g(2, {fig.x, disjoint});
    for (ProcessId a = 0; a <= 2; ++a)
        EXPECT_FALSE(g.indist(a, 0, 1));
    EXPECT_THROW(Frame(2, {fig.x, fig.x}), PreconditionError);
    EXPECT_THROW(Frame(2, {facet_of({0, 1})}), PreconditionError);
}
