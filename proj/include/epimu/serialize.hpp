#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "epimu/model.hpp"
#include "epimu/subdivision.hpp"

namespace epimu {

using Json = nlohmann::ordered_json;

/// Base values as integers, pairs as {"pair":[x,y]}, views as {"view":[[process,value],...]}.
Json value_to_json(const Value& v);
Value value_from_json(const Json& j);

struct ModelMeta {
    int n = 0;
    int k = 0;
    int m = 0;
    std::string kind;
};

/// A model as read back from JSON. `facets` is present when the states carry round histories.
struct ImportedModel {
    ModelMeta meta;
    SimplicialModel model;
    std::optional<std::vector<SubdividedFacet>> facets;
};

/// {"meta":{...}, "states":[{"id","name","vertexes","base","history","atoms"}], "relations":{"0":[[x,y],...]}}.
/// `base` and `history` are written only when `facets` is given.
Json model_to_json(const SimplicialModel& m, const ModelMeta& meta, const std::vector<SubdividedFacet>* facets = nullptr);

/// Rebuilds the model; relations are recomputed and must match the stored ones.
/// Throws FormatError on malformed or inconsistent input.
ImportedModel model_from_json(const Json& j);

/// Display name of state s: the symbolic facet name when histories are known.
std::string state_name(const SimplicialModel& m, StateId s, const std::vector<SubdividedFacet>* facets = nullptr);

/// One node per state labeled with its name and atoms, one undirected edge per related pair
/// labeled with the sorted colors it shares. Self-loops are not drawn.
std::string model_to_dot(const SimplicialModel& m, const std::vector<SubdividedFacet>* facets = nullptr);

}  // namespace epimu
