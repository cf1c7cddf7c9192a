#include "epimu/serialize.hpp"

#include <map>
#include <sstream>

#include "epimu/errors.hpp"
#include "epimu/formula.hpp"

namespace epimu {

Json value_to_json(const Value& v)
{
    switch (v.kind()) {
    case Value::Kind::Base:
        return v.as_base();
    case Value::Kind::Pair:
        return Json{{"pair", Json::array({value_to_json(v.first()), value_to_json(v.second())})}};
    case Value::Kind::View: {
        Json entries = Json::array();
        for (const auto& e : v.entries())
            entries.push_back(Json::array({e.process, value_to_json(e.value)}));
        return Json{{"view", entries}};
    }
    }
    return nullptr;
}

Value value_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Value::base(j.get<int>());
    if (j.is_object() && j.size() == 1 && j.contains("pair")) {
        const auto& p = j.at("pair");
        if (!p.is_array() || p.size() != 2)
            throw FormatError("a pair needs exactly two members");
        return Value::pair(value_from_json(p[0]), value_from_json(p[1]));
    }
    if (j.is_object() && j.size() == 1 && j.contains("view")) {
        std::vector<ViewEntry> entries;
        for (const auto& e : j.at("view")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer())
                throw FormatError("a view entry is [process, value]");
            entries.push_back({e[0].get<ProcessId>(), value_from_json(e[1])});
        }
        try {
            return Value::view(std::move(entries));
        } catch (const PreconditionError& err) {
            throw FormatError(err.what());
        }
    }
    throw FormatError("not a value: " + j.dump());
}

std::string state_name(const SimplicialModel& m, StateId s, const std::vector<SubdividedFacet>* facets)
{
    if (facets)
        return facets->at(s).name();
    return m.frame().state(s).to_string();
}

Json model_to_json(const SimplicialModel& m, const ModelMeta& meta, const std::vector<SubdividedFacet>* facets)
{
    const Frame& f = m.frame();
    if (facets && facets->size() != f.num_states())
        throw PreconditionError("facet list does not match the model's states");
    Json out;
    out["meta"] = {{"n", meta.n}, {"k", meta.k}, {"m", meta.m}, {"kind", meta.kind}};
    Json states = Json::array();
    for (StateId s = 0; s < f.num_states(); ++s) {
        Json st;
        st["id"] = s;
        st["name"] = state_name(m, s, facets);
        Json vs = Json::array();
        for (const auto& v : f.state(s).vertexes())
            vs.push_back(Json::array({v.color, value_to_json(v.value)}));
        st["vertexes"] = vs;
        if (facets) {
            Json base = Json::array();
            for (const auto& v : (*facets)[s].base.vertexes())
                base.push_back(value_to_json(v.value));
            st["base"] = base;
            Json history = Json::array();
            for (const auto& g : (*facets)[s].history)
                history.push_back(g.to_string());
            st["history"] = history;
        }
        Json atoms = Json::array();
        for (const auto& p : m.labels(s))
            atoms.push_back(p.to_string());
        st["atoms"] = atoms;
        states.push_back(std::move(st));
    }
    out["states"] = std::move(states);
    Json rel = Json::object();
    for (ProcessId a = 0; a <= f.n(); ++a) {
        Json pairs = Json::array();
        if (f.num_states() > 0)
            for (auto [x, y] : f.related_pairs(ProcessSet::singleton(a)))
                pairs.push_back(Json::array({x, y}));
        rel[std::to_string(a)] = std::move(pairs);
    }
    out["relations"] = std::move(rel);
    return out;
}

namespace {

AtomicProp parse_atom(const std::string& text)
{
    Formula f = [&] {
        try {
            return parse_formula(text);
        } catch (const ParseError& e) {
            throw FormatError("bad atom '" + text + "': " + e.what());
        }
    }();
    if (f.kind() != Formula::Kind::Atom)
        throw FormatError("'" + text + "' is not an atom");
    return f.atom_prop();
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

ImportedModel model_from_json(const Json& j)
{
    try {
        const Json& meta = field(j, "meta");
        ModelMeta mm{field(meta, "n").get<int>(), meta.value("k", 0), meta.value("m", 0), meta.value("kind", std::string())};
        if (mm.n < 0 || mm.n >= kMaxProcesses)
            throw FormatError("n out of range");

        std::vector<Simplex> facets;
        std::vector<std::vector<AtomicProp>> labels;
        std::vector<SubdividedFacet> subdivided;
        bool with_history = false;
        const Json& states = field(j, "states");
        for (std::size_t i = 0; i < states.size(); ++i) {
            const Json& st = states[i];
            if (field(st, "id").get<std::size_t>() != i)
                throw FormatError("state ids must be 0, 1, 2, ... in order");
            std::vector<Vertex> vs;
            for (const auto& v : field(st, "vertexes")) {
                if (!v.is_array() || v.size() != 2)
                    throw FormatError("a vertex is [color, value]");
                vs.push_back({v[0].get<ProcessId>(), value_from_json(v[1])});
            }
            facets.emplace_back(std::move(vs));
            std::vector<AtomicProp> ls;
            for (const auto& a : field(st, "atoms"))
                ls.push_back(parse_atom(a.get<std::string>()));
            labels.push_back(std::move(ls));

            const bool has = st.contains("history");
            if (i == 0)
                with_history = has;
            else if (has != with_history)
                throw FormatError("either every state or none carries a history");
            if (has) {
                std::vector<Vertex> base;
                ProcessId a = 0;
                for (const auto& v : field(st, "base"))
                    base.push_back({a++, value_from_json(v)});
                std::vector<Osp> history;
                for (const auto& g : field(st, "history"))
                    history.push_back(Osp::parse(g.get<std::string>()));
                auto sf = iterated_subdivision(Simplex(std::move(base)), std::move(history));
                if (sf.realized != facets.back())
                    throw FormatError("state " + std::to_string(i) + ": vertexes do not match base and history");
                subdivided.push_back(std::move(sf));
            }
        }

        auto frame = std::make_shared<const Frame>(mm.n, std::move(facets));
        const Json& rel = field(j, "relations");
        for (ProcessId a = 0; a <= mm.n; ++a) {
            std::vector<std::pair<StateId, StateId>> stored;
            for (const auto& p : field(rel, std::to_string(a).c_str()))
                stored.emplace_back(p.at(0).get<StateId>(), p.at(1).get<StateId>());
            std::sort(stored.begin(), stored.end());
            const auto actual = frame->num_states() ? frame->related_pairs(ProcessSet::singleton(a))
                                                    : std::vector<std::pair<StateId, StateId>>{};
            if (stored != actual)
                throw FormatError("relation of process " + std::to_string(a) + " does not match the states");
        }
        ImportedModel out{mm, SimplicialModel(frame, std::move(labels)), std::nullopt};
        if (with_history)
            out.facets = std::move(subdivided);
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(e.what());
    } catch (const PreconditionError& e) {
        throw FormatError(e.what());
    } catch (const ParseError& e) {
        throw FormatError(e.what());
    }
}

std::string model_to_dot(const SimplicialModel& m, const std::vector<SubdividedFacet>* facets)
{
    const Frame& f = m.frame();
    std::ostringstream out;
    out << "graph model {\n";
    auto escape = [](const std::string& s) {
        std::string q;
        for (char c : s) {
            if (c == '"' || c == '\\')
                q += '\\';
            q += c;
        }
        return q;
    };
    for (StateId s = 0; s < f.num_states(); ++s) {
        std::string label = escape(state_name(m, s, facets));
        for (const auto& p : m.labels(s))
            label += "\\n" + escape(p.to_string());
        out << "  s" << s << " [label=\"" << label << "\"];\n";
    }
    std::map<std::pair<StateId, StateId>, std::vector<ProcessId>> edges;
    if (f.num_states() > 0)
        for (ProcessId a = 0; a <= f.n(); ++a)
            for (auto pr : f.related_pairs(ProcessSet::singleton(a)))
                edges[pr].push_back(a);
    for (const auto& [pr, colors] : edges) {
        std::string label;
        for (std::size_t i = 0; i < colors.size(); ++i)
            label += (i ? "," : "") + std::to_string(colors[i]);
        out << "  s" << pr.first << " -- s" << pr.second << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace epimu
