#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epimu/errors.hpp"
#include "epimu/eval.hpp"
#include "epimu/fd.hpp"
#include "epimu/formulas.hpp"
#include "epimu/models.hpp"
#include "epimu/morphism.hpp"
#include "epimu/serialize.hpp"
#include "epimu/sperner.hpp"

using namespace epimu;

namespace {

struct Config {
    std::string verb;
    int n = 1;
    int k = 1;
    int m = 1;
    int k_param = 0;
    int k_conc = 0;
    std::string model = "iis";
    std::string protocol = "iis";
    std::string formula = "phi";
    std::string format = "text";
    std::size_t limit = kDefaultStateLimit;
    std::uint64_t seed = 1;
    std::string input_file;
    std::string out;
    std::string morphism_out;
    std::string labeling = "own";
    std::size_t samples = 0;
    std::size_t max_len = 0;
    std::size_t cap = 10;
    std::uint64_t node_limit = 0;
    bool parallel = false;
};

Json config_json(const Config& c)
{
    return {{"verb", c.verb}, {"n", c.n}, {"k", c.k}, {"m", c.m}, {"k_param", c.k_param}, {"k_conc", c.k_conc},
        {"model", c.model}, {"protocol", c.protocol}, {"formula", c.formula}, {"format", c.format},
        {"limit", c.limit}, {"seed", c.seed}, {"input_file", c.input_file}, {"labeling", c.labeling},
        {"samples", c.samples}, {"max_len", c.max_len}, {"cap", c.cap}, {"node_limit", c.node_limit},
        {"parallel", c.parallel}};
}

Execution execution(const Config& c)
{
    return c.parallel ? Execution::Parallel : Execution::Serial;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const Config& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out);
    if (!out || !(out << text))
        throw FormatError("cannot write '" + c.out + "'");
}

struct Built {
    SimplicialModel model;
    std::optional<std::vector<SubdividedFacet>> facets;
    ModelMeta meta;

    const std::vector<SubdividedFacet>* facets_ptr() const { return facets ? &*facets : nullptr; }
};

Built build_model(const Config& c)
{
    if (!c.input_file.empty()) {
        auto imported = model_from_json(Json::parse(read_file(c.input_file)));
        return {std::move(imported.model), std::move(imported.facets), imported.meta};
    }
    const ModelMeta meta{c.n, c.k, c.m, c.model};
    if (c.model == "input" || c.model == "sak" || c.model == "sak-fc") {
        const std::uint64_t inputs = iis_state_count(c.n, 0);
        if (inputs > c.limit)
            throw ResourceLimitError("input complex at n = " + std::to_string(c.n), inputs, c.limit);
    }
    if (c.model == "input")
        return {SimplicialModel::with_input_labels(std::make_shared<const Frame>(input_complex(c.n))), std::nullopt, meta};
    if (c.model == "sak" || c.model == "sak-fc") {
        auto t = task_model_sak(c.n, c.k);
        return {c.model == "sak" ? t.plain : t.fc, std::nullopt, meta};
    }
    if (c.model == "iis") {
        auto p = protocol_model_iis(c.n, c.m, c.limit);
        return {p.model, p.facets, meta};
    }
    auto p = k_concurrency_model(c.n, c.k, c.limit);
    return {p.model, p.facets, {c.n, c.k, 2, c.model}};
}

Formula resolve_formula(const Config& c, int n)
{
    const int k = c.k_param > 0 ? c.k_param : c.k;
    if (FormulaFamily::is_known(c.formula))
        return formula_family().get(c.formula, n, k);
    if (!c.formula.empty() && c.formula[0] == '@')
        return parse_formula(read_file(c.formula.substr(1)));
    return parse_formula(c.formula);
}

Json relation_counts(const Frame& f)
{
    Json out = Json::object();
    for (ProcessId a = 0; a <= f.n(); ++a)
        out[std::to_string(a)] = f.num_states() ? f.related_pairs(ProcessSet::singleton(a)).size() : 0;
    return out;
}

Json cmd_build(const Config& c)
{
    auto b = build_model(c);
    const Frame& f = b.model.frame();
    std::size_t atoms = 0;
    for (StateId s = 0; s < f.num_states(); ++s)
        atoms += b.model.labels(s).size();
    if (!c.out.empty())
        write_output(c, c.format == "dot" ? model_to_dot(b.model, b.facets_ptr())
                                          : model_to_json(b.model, b.meta, b.facets_ptr()).dump(2) + "\n");
    return {{"states", f.num_states()}, {"vertexes", f.num_vertexes()}, {"relation_pairs", relation_counts(f)},
        {"atoms", atoms}};
}

Json cmd_check(const Config& c)
{
    auto b = build_model(c);
    const Formula phi = resolve_formula(c, b.model.n());
    if (!phi.is_closed())
        throw UnboundVariableError(phi.free_vars().front());
    EvalOptions opts;
    opts.execution = execution(c);
    const StateSet sat = eval(b.model, {}, phi, opts);
    Json counter = Json::array();
    for (StateId s = 0; s < b.model.num_states() && counter.size() < c.cap; ++s)
        if (!sat.test(s))
            counter.push_back(state_name(b.model, s, b.facets_ptr()));
    const std::string shown = phi.node_count() <= 40 ? phi.to_string() : c.formula;
    return {{"formula", shown}, {"formula_nodes", phi.node_count()}, {"states", b.model.num_states()}, {"satisfied", sat.count()},
        {"valid", sat.count() == b.model.num_states()}, {"counterexamples", counter}};
}

Json cmd_solve(const Config& c)
{
    std::shared_ptr<const ProtocolModel> p;
    if (c.protocol == "rk")
        p = std::make_shared<const ProtocolModel>(k_concurrency_model(c.n, c.k_conc > 0 ? c.k_conc : c.k, c.limit));
    else
        p = std::make_shared<const ProtocolModel>(protocol_model_iis(c.n, c.m, c.limit));
    auto t = std::make_shared<const TaskModel>(task_model_sak(c.n, c.k));
    SearchOptions opts;
    opts.execution = execution(c);
    opts.node_limit = c.node_limit;
    auto r = search_morphism(p, t, opts);
    Json out{{"status", to_string(r.status)}, {"protocol_states", p->frame->num_states()},
        {"task_states", t->frame->num_states()}, {"variables", r.variables}, {"nodes", r.nodes},
        {"max_depth", r.max_depth}};
    if (r.morphism) {
        const Morphism& m = *r.morphism;
        Json gain = Json::object();
        for (const char* name : {"ifun", "ofun", "valid", "agree", "know", "phi"})
            gain[name] = knowledge_gain_check(m, formula_family().get(name, c.n, c.k));
        out["knowledge_gain"] = gain;
        out["phi_valid_on_pull_back"] = valid(pull_back(m), phi(c.n, c.k));
        if (!c.morphism_out.empty()) {
            Json d = Json::array();
            const Frame& f = *p->frame;
            for (std::size_t v = 0; v < f.num_vertexes(); ++v)
                d.push_back({{"vertex", Json::array({f.vertex(v).color, value_to_json(f.vertex(v).value)})},
                    {"decision", m.decisions()[v]}});
            std::ofstream mo(c.morphism_out);
            if (!mo || !(mo << Json{{"n", c.n}, {"k", c.k}, {"decisions", d}}.dump(2) << "\n"))
                throw FormatError("cannot write '" + c.morphism_out + "'");
        }
    }
    return out;
}

Json cmd_witness(const Config& c)
{
    auto p = std::make_shared<const ProtocolModel>(fd_union_model(c.n, c.m, c.k));
    auto frame = std::make_shared<const BowtieFrame>(p, c.k);
    DecisionMap labeling;
    if (c.labeling == "own")
        labeling.assign(p->own_input.begin(), p->own_input.end());
    else if (c.labeling == "random")
        labeling = random_view_labelings(*p, 1, c.seed).front();
    else
        labeling.assign(p->frame->num_vertexes(), -1);
    BowtieGraph g(frame, decision_labeled(*p, labeling));
    auto r = witness_path(g, c.max_len);
    Json steps = Json::array();
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        steps.push_back({{"facet", p->facets[s.state].name()}, {"level", g.level(s.state)},
            {"via", s.via ? Json(s.via->to_string()) : Json(nullptr)}, {"phi", static_cast<bool>(r.phi_holds[i])}});
    }
    Json out{{"mode", to_string(r.mode)}, {"length", r.steps.size()}, {"bound", r.bound}, {"failing", r.failing},
        {"steps", steps}};
    if (c.samples > 0) {
        auto sv = survey_degrees(frame, random_view_labelings(*p, c.samples, c.seed), execution(c));
        out["degrees"] = {{"labelings", sv.labelings}, {"checked", sv.checked}, {"zero", sv.zero}, {"two", sv.two},
            {"sigma0_checked", sv.sigma0_checked}, {"sigma0_one", sv.sigma0_one},
            {"parity_failures", sv.parity_failures}, {"unmatched_sigma0", sv.unmatched_sigma0},
            {"degrees_zero_or_two", sv.degrees_zero_or_two()}};
    }
    return out;
}

Json cmd_sperner(const Config& c)
{
    auto cx = sperner_complex(c.n, c.m);
    std::vector<Coloring> colorings;
    std::string mode = "exhaustive";
    if (c.samples == 0) {
        colorings = all_sperner_colorings(cx, c.limit);
    } else {
        mode = "random";
        std::mt19937_64 rng(c.seed);
        for (std::size_t i = 0; i < c.samples; ++i)
            colorings.push_back(random_sperner_coloring(cx, rng));
    }
    std::size_t odd = 0, lo = SIZE_MAX, hi = 0;
    for (const auto& col : colorings) {
        const std::size_t n = sperner_count(cx, col);
        odd += n % 2;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    return {{"mode", mode}, {"facets", cx.facets.size()}, {"vertexes", cx.vertexes.size()},
        {"colorings", colorings.size()}, {"odd", odd}, {"all_odd", odd == colorings.size()},
        {"min_count", colorings.empty() ? 0 : lo}, {"max_count", hi}};
}

std::string render_text(const Json& report)
{
    std::ostringstream out;
    out << "epimu " << report["version"].get<std::string>() << " " << report["config"]["verb"].get<std::string>()
        << "\n";
    for (const auto& [key, value] : report["result"].items())
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    out << "timing_ms: " << report["timing_ms"].dump() << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv)
{
    Config c;
    CLI::App app{"Epistemic mu-calculus checks for distributed task solvability"};
    app.set_version_flag("--version", std::string(EPIMU_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--n", c.n, "Highest process id")->check(CLI::Range(0, 6));
    app.add_option("--k", c.k, "Set agreement parameter, or concurrency for --model rk")->check(CLI::Range(1, 7));
    app.add_option("--m", c.m, "Rounds")->check(CLI::Range(1, 6));
    app.add_option("--k-param", c.k_param, "k used by generated formulas (default --k)");
    app.add_option("--k-conc", c.k_conc, "Concurrency level for --protocol rk (default --k)");
    app.add_option("--model", c.model, "Model to build")->check(CLI::IsMember({"input", "sak", "sak-fc", "iis", "rk"}));
    app.add_option("--protocol", c.protocol, "Protocol for solve")->check(CLI::IsMember({"iis", "rk"}));
    app.add_option("--formula", c.formula, "Formula name, @file, or formula text");
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--limit", c.limit, "State or enumeration limit")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "Seed for sampled properties");
    app.add_option("--input-file", c.input_file, "Read the model from a JSON file");
    app.add_option("--out", c.out, "Write the model or export here instead of stdout");
    app.add_option("--morphism-out", c.morphism_out, "Write a found morphism here");
    app.add_option("--labeling", c.labeling, "Decision labeling for witness")->check(CLI::IsMember({"own", "random", "none"}));
    app.add_option("--samples", c.samples, "Random samples (witness degree survey, sperner)");
    app.add_option("--max-len", c.max_len, "Witness path cap, 0 for none");
    app.add_option("--cap", c.cap, "Counterexamples to list");
    app.add_option("--node-limit", c.node_limit, "Search node limit, 0 for none");
    app.add_flag("--parallel", c.parallel, "Use the OpenMP kernels");
    const std::pair<const char*, const char*> verbs[] = {
        {"build", "Build a model and print its sizes"},
        {"check", "Evaluate a formula on every state of a model"},
        {"solve", "Search for a decision map from a protocol to set agreement"},
        {"witness", "Walk the bowtie graph from sigma_0 and survey degrees"},
        {"sperner", "Count fully colored facets under Sperner colorings"},
        {"export", "Write a model as JSON or DOT"},
    };
    for (auto [verb, help] : verbs)
        app.add_subcommand(verb, help)->callback([&c, verb] { c.verb = verb; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        if (c.verb == "export") {
            auto b = build_model(c);
            write_output(c, c.format == "dot" ? model_to_dot(b.model, b.facets_ptr())
                                              : model_to_json(b.model, b.meta, b.facets_ptr()).dump(2) + "\n");
            return 0;
        }
        Json result;
        if (c.verb == "build")
            result = cmd_build(c);
        else if (c.verb == "check")
            result = cmd_check(c);
        else if (c.verb == "solve")
            result = cmd_solve(c);
        else if (c.verb == "witness")
            result = cmd_witness(c);
        else
            result = cmd_sperner(c);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        Json report{{"tool", "epimu"}, {"version", EPIMU_VERSION}, {"config", config_json(c)}, {"result", result},
            {"timing_ms", ms}};
        std::cout << (c.format == "json" ? report.dump(2) + "\n" : render_text(report));
        return 0;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
