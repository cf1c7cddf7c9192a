#include <benchmark/benchmark.h>

#include <random>

#include "epimu/eval.hpp"
#include "epimu/fd.hpp"
#include "epimu/formulas.hpp"
#include "epimu/kernels.hpp"
#include "epimu/models.hpp"
#include "epimu/morphism.hpp"

using namespace epimu;

namespace {

Execution mode(const benchmark::State& state)
{
    return state.range(0) ? Execution::Parallel : Execution::Serial;
}

const ProtocolModel& iis22()
{
    static const ProtocolModel p = protocol_model_iis(2, 2);
    return p;
}

void BM_DKnow(benchmark::State& state)
{
    const Frame& f = iis22().model.frame();
    const Partition& classes = f.classes(ProcessSet::range(1, 2));
    StateSet body(f.num_states());
    std::mt19937_64 rng(3);
    for (std::size_t s = 0; s < body.size(); ++s)
        body[s] = rng() % 8 != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::dknow(classes, body, mode(state)));
}
BENCHMARK(BM_DKnow)->Arg(0)->Arg(1);

void BM_EvalPhi(benchmark::State& state)
{
    const auto& p = iis22();
    const auto m = decision_labeled(p, random_view_labelings(p, 1, static_cast<std::uint64_t>(state.range(1)))[0]);
    const Formula f = phi(2, 2);
    EvalOptions opts;
    opts.execution = mode(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(eval(m, {}, f, opts));
}
BENCHMARK(BM_EvalPhi)->Args({0, 1})->Args({1, 1})->Args({0, 2})->Args({1, 2})->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state)
{
    auto p = std::make_shared<const ProtocolModel>(k_concurrency_model(2, 2));
    auto t = std::make_shared<const TaskModel>(task_model_sak(2, 1));
    SearchOptions opts;
    opts.execution = mode(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(search_morphism(p, t, opts));
}
BENCHMARK(BM_Search)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SurveyDegrees(benchmark::State& state)
{
    auto p = std::make_shared<const ProtocolModel>(fd_union_model(2, 2, 1));
    auto frame = std::make_shared<const BowtieFrame>(p, 1);
    const auto labelings = random_view_labelings(*p, 500, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(survey_degrees(frame, labelings, mode(state)));
}
BENCHMARK(BM_SurveyDegrees)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
