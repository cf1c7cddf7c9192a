#pragma once

#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epimu/eval.hpp"
#include "epimu/formula.hpp"
#include "epimu/model.hpp"

namespace epimu::testing {

inline Simplex facet_of(const std::vector<int>& values)
{
    std::vector<Vertex> vs;
    for (std::size_t a = 0; a < values.size(); ++a)
        vs.push_back({static_cast<ProcessId>(a), Value::base(values[a])});
    return Simplex(std::move(vs));
}

/// The three states X, Y, W of the running three-process example.
struct RunningExample {
    Simplex x = facet_of({0, 1, 2});
    Simplex y = facet_of({1, 1, 2});
    Simplex w = facet_of({1, 1, 0});
    std::shared_ptr<const Frame> frame = std::make_shared<Frame>(2, std::vector<Simplex>{x, y, w});
    SimplicialModel model = SimplicialModel::with_input_labels(frame);
};

/// A random pure chromatic model: up to max_states distinct facets over a small value range,
/// labeled with random input atoms.
inline SimplicialModel random_model(std::mt19937_64& rng, std::size_t max_states = 50)
{
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    const int values = std::uniform_int_distribution<int>(2, 4)(rng);
    const std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
    std::set<Simplex> seen;
    std::vector<Simplex> facets;
    std::uniform_int_distribution<int> pick(0, values - 1);
    for (std::size_t tries = 0; facets.size() < target && tries < 20 * target; ++tries) {
        std::vector<int> v(static_cast<std::size_t>(n) + 1);
        for (auto& x : v)
            x = pick(rng);
        Simplex f = facet_of(v);
        if (seen.insert(f).second)
            facets.push_back(f);
    }
    auto frame = std::make_shared<Frame>(n, facets);
    std::vector<std::vector<AtomicProp>> labels(facets.size());
    std::bernoulli_distribution coin(0.5);
    for (auto& l : labels)
        for (ProcessId a = 0; a <= n; ++a)
            for (int v = 0; v < 2; ++v)
                if (coin(rng))
                    l.push_back(input_atom(a, v));
    return SimplicialModel(frame, std::move(labels));
}

/// A random positive formula of the given depth over atoms input(a)=0/1, a <= n, whose free
/// variables are drawn from `free`. Fixpoint variables are fresh per nesting level.
inline Formula random_formula(std::mt19937_64& rng, int n, int depth, std::vector<std::string> free, int level = 0)
{
    std::uniform_int_distribution<int> proc(0, n);
    std::uniform_int_distribution<int> bit(0, 1);
    auto leaf = [&]() -> Formula {
        int r = std::uniform_int_distribution<int>(0, free.empty() ? 1 : 2)(rng);
        if (r == 0)
            return Formula::atom(input_atom(proc(rng), bit(rng)));
        if (r == 1)
            return Formula::neg_atom(input_atom(proc(rng), bit(rng)));
        return Formula::var(free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)]);
    };
    if (depth <= 0)
        return leaf();
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0:
        return leaf();
    case 1:
        return Formula::conj({random_formula(rng, n, depth - 1, free, level),
            random_formula(rng, n, depth - 1, free, level)});
    case 2:
        return Formula::disj({random_formula(rng, n, depth - 1, free, level),
            random_formula(rng, n, depth - 1, free, level)});
    case 3:
    case 4: {
        ProcessSet g;
        while (g.empty())
            for (ProcessId a = 0; a <= n; ++a)
                if (bit(rng))
                    g.insert(a);
        return Formula::dknow(g, random_formula(rng, n, depth - 1, free, level));
    }
    default: {
        std::string z = "Z" + std::to_string(level);
        free.push_back(z);
        return Formula::nu(z, random_formula(rng, n, depth - 1, free, level + 1));
    }
    }
}

inline StateSet random_subset(std::mt19937_64& rng, std::size_t size)
{
    StateSet s(size);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < size; ++i)
        s[i] = coin(rng);
    return s;
}

}  // namespace epimu::testing
