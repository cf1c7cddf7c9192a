#include <gtest/gtest.h>

#include <map>
#include <set>

#include "epimu/errors.hpp"
#include "epimu/sperner.hpp"

using namespace epimu;

namespace {

/// Interior vertexes of the one-dimensional case: those that saw both processes.
std::size_t interior(const SpernerComplex& c)
{
    std::size_t out = 0;
    for (auto carrier : c.carriers)
        out += carrier.size() == 2;
    return out;
}

}  // namespace

TEST(Sperner, ComplexShape)
{
    for (int m = 1; m <= 3; ++m) {
        auto c = sperner_complex(1, m);
        std::size_t pow3 = 1;
        for (int i = 0; i < m; ++i)
            pow3 *= 3;
        // A path of 3^m edges.
        EXPECT_EQ(c.facets.size(), pow3);
        EXPECT_EQ(c.vertexes.size(), pow3 + 1);
        EXPECT_EQ(interior(c), pow3 - 1);
        std::map<std::size_t, int> degree;
        for (const auto& f : c.facets) {
            ASSERT_EQ(f.size(), 2u);
            ++degree[f[0]];
            ++degree[f[1]];
        }
        int ends = 0;
        for (auto [v, d] : degree) {
            EXPECT_LE(d, 2);
            if (d == 1) {
                ++ends;
                EXPECT_EQ(c.carriers[v].size(), 1);
            }
        }
        EXPECT_EQ(ends, 2);
    }
    auto c2 = sperner_complex(2, 1);
    EXPECT_EQ(c2.facets.size(), 13u);
    EXPECT_EQ(c2.vertexes.size(), 12u);
    for (std::size_t v = 0; v < c2.vertexes.size(); ++v)
        EXPECT_TRUE(c2.carriers[v].contains(c2.vertexes[v].color));
    EXPECT_EQ(sperner_complex(2, 2).facets.size(), 169u);
}

TEST(Sperner, AllColoringsOneDimensional)
{
    for (int m = 1; m <= 2; ++m) {
        auto c = sperner_complex(1, m);
        auto all = all_sperner_colorings(c, 1u << 12);
        EXPECT_EQ(all.size(), std::size_t{1} << interior(c));
        std::set<Coloring> distinct(all.begin(), all.end());
        EXPECT_EQ(distinct.size(), all.size());
        for (const auto& col : all) {
            ASSERT_TRUE(is_sperner(c, col));
            EXPECT_EQ(sperner_count(c, col) % 2, 1u);
        }
    }
}

TEST(Sperner, RandomColoringsTwoDimensional)
{
    std::mt19937_64 rng(8);
    for (int m = 1; m <= 2; ++m) {
        auto c = sperner_complex(2, m);
        for (int i = 0; i < 1000; ++i) {
            auto col = random_sperner_coloring(c, rng);
            ASSERT_TRUE(is_sperner(c, col));
            EXPECT_EQ(sperner_count(c, col) % 2, 1u);
        }
    }
}

TEST(Sperner, DeterministicColorings)
{
    for (int n = 0; n <= 3; ++n)
        for (int m = 1; m <= (n == 3 ? 1 : 2); ++m) {
            auto c = sperner_complex(n, m);
            auto least = sperner_count(c, least_carrier_coloring(c));
            EXPECT_EQ(least % 2, 1u) << n << m;
            auto own = sperner_count(c, own_color_coloring(c));
            // Every facet carries every color under the process coloring.
            EXPECT_EQ(own, c.facets.size());
            EXPECT_EQ(sperner_odd_count(n, m, least_carrier_coloring(c)), least);
        }
}

TEST(Sperner, RejectsNonSperner)
{
    auto c = sperner_complex(1, 1);
    auto col = least_carrier_coloring(c);
    std::size_t corner = 0;
    while (c.carriers[corner].size() != 1)
        ++corner;
    col[corner] = 1 - col[corner];
    EXPECT_FALSE(is_sperner(c, col));
    EXPECT_THROW(sperner_count(c, col), NonSpernerColoringError);
    EXPECT_THROW(sperner_count(c, Coloring(2, 0)), NonSpernerColoringError);
    EXPECT_THROW(all_sperner_colorings(sperner_complex(2, 2), 1000), ResourceLimitError);
}
