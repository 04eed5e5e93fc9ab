#include <benchmark/benchmark.h>

#include <vector>

#include "arl/actions.hpp"
#include "arl/dataset.hpp"
#include "arl/quality.hpp"
#include "arl/recommend.hpp"
#include "arl/rules.hpp"

namespace {

const arl::Dataset& monk1() {
    static arl::Dataset ds =
        arl::load_dataset(ARL_DATA_DIR "/monk1.csv", ARL_DATA_DIR "/monk1.schema");
    return ds;
}

void bm_evaluate(benchmark::State& state) {
    const arl::Measure m = static_cast<arl::Measure>(state.range(0));
    arl::ConfusionMatrix cm{31, 14, 62, 62};
    for (auto _ : state) {
        benchmark::DoNotOptimize(arl::evaluate(m, cm));
        cm.p = (cm.p % 62) + 1;  // defeat constant folding
    }
}

void bm_fisher(benchmark::State& state) {
    const long long P = state.range(0);
    arl::ConfusionMatrix cm{P / 2, P / 4, P, P};
    for (auto _ : state) benchmark::DoNotOptimize(arl::fisher_p_value(cm));
}

void bm_grow_rule(benchmark::State& state) {
    const arl::Dataset& ds = monk1();
    std::vector<bool> uncovered(ds.size(), true);
    for (auto _ : state) {
        arl::ClassificationRule seed;
        seed.conclusion = 1;
        benchmark::DoNotOptimize(
            arl::grow_rule(seed, ds, uncovered, static_cast<int>(state.range(0)),
                           arl::Measure::C2));
    }
}

void bm_induce_rules(benchmark::State& state) {
    const arl::Dataset& ds = monk1();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            arl::induce_rules(ds, 1, 5, arl::Measure::C2, arl::Measure::C2));
}

void bm_induce_action_rules(benchmark::State& state) {
    const arl::Dataset& ds = monk1();
    const arl::Direction dir =
        state.range(0) == 0 ? arl::Direction::Forward : arl::Direction::Backward;
    for (auto _ : state)
        benchmark::DoNotOptimize(arl::induce_action_rules(
            ds, 0, 1, dir, 5, arl::Measure::C2, arl::Measure::C2, arl::Measure::C2));
}

void bm_recommend(benchmark::State& state) {
    const arl::Dataset& ds = monk1();
    arl::ActionRuleSet rules =
        arl::induce_action_rules(ds, 0, 1, arl::Direction::Backward, 5, arl::Measure::C2,
                                 arl::Measure::C2, arl::Measure::C2);
    arl::MetaTable mt = arl::build_meta_table(rules, ds);
    const arl::Example& x = ds.examples().front();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            arl::induce_recommendations(mt, x, 1, 5, arl::Measure::C2, 3));
}

BENCHMARK(bm_evaluate)->DenseRange(0, 6)->Name("evaluate");
BENCHMARK(bm_fisher)->Arg(62)->Arg(500)->Arg(5000)->Name("fisher_p_value");
BENCHMARK(bm_grow_rule)->Arg(1)->Arg(5)->Name("grow_rule/monk1");
BENCHMARK(bm_induce_rules)->Name("induce_rules/monk1");
BENCHMARK(bm_induce_action_rules)->Arg(0)->Arg(1)->Name("induce_action_rules/monk1");
BENCHMARK(bm_recommend)->Name("induce_recommendations/monk1");

}  // namespace

BENCHMARK_MAIN();
