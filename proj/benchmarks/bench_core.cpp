#include <benchmark/benchmark.h>

#include "qumulant/catalog.hpp"
#include "qumulant/cluster.hpp"
#include "qumulant/protocols.hpp"
#include "qumulant/qstate.hpp"
#include "qumulant/random.hpp"

using namespace qumulant;

static void BM_PauliExpectation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto rng = seeded_rng(1);
    const auto s = haar_random_state(n, rng);
    const auto p = qstate::PauliString::parse(std::string(n, 'y'));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qstate::expectation(s, p));
    }
}
BENCHMARK(BM_PauliExpectation)->Arg(5)->Arg(8)->Arg(10);

static void BM_Cumulant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto rng = seeded_rng(2);
    const auto s = haar_random_state(n, rng);
    const auto p = qstate::PauliString::parse(std::string(n, 'x'));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster::cumulant(s, p));
    }
}
BENCHMARK(BM_Cumulant)->Arg(3)->Arg(5)->Arg(7);

static void BM_CorrelationTensor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto rng = seeded_rng(3);
    const auto s = haar_random_state(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster::correlation_tensor(s));
    }
}
BENCHMARK(BM_CorrelationTensor)->Arg(3)->Arg(5)->Arg(6);

static void BM_TeleportDirect(benchmark::State& state) {
    auto rng = seeded_rng(4);
    const auto msg = haar_random_state(2, rng);
    protocols::teleport_direct(msg, 10);  // warm the correction-table cache
    for (auto _ : state) {
        benchmark::DoNotOptimize(protocols::teleport_direct(msg, 10));
    }
}
BENCHMARK(BM_TeleportDirect);

static void BM_ControlledDenseRun(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(protocols::controlled_dense_run(
            protocols::DenseChannel::Psi5_1, 0.3, protocols::ControlInterface::CA));
    }
}
BENCHMARK(BM_ControlledDenseRun);

static void BM_MakeVarphi7(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(catalog::generalized_varphi(3, 5));
    }
}
BENCHMARK(BM_MakeVarphi7);

BENCHMARK_MAIN();
