// SPDX-License-Identifier: Apache-2.0
#include "smdc/mds_coset.hpp"
#include "smdc/rate_region.hpp"
#include "smdc/share_file.hpp"
#include "smdc/smdc.hpp"
#include "smdc/verifier.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace smdc;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
    return out;
}

void BM_FieldMul(benchmark::State& state) {
    const Field f = state.range(0) == 256 ? Field::gf256() : Field::gf(static_cast<std::uint32_t>(state.range(0)));
    std::vector<Symbol> a(4096), b(4096);
    std::mt19937 rng(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng() % f.order();
        b[i] = rng() % f.order();
    }
    for (auto _ : state) {
        Symbol acc = 0;
        for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_FieldMul)->Arg(7)->Arg(256);

void BM_CosetEncode(benchmark::State& state) {
    const std::size_t L = static_cast<std::size_t>(state.range(0));
    const coset::CosetCode code(Field::gf256(), L, 1, L - 1);
    SeededEntropy e(2);
    std::vector<Symbol> msg(L - 2, 7);
    for (auto _ : state) {
        const auto key = code.keygen(e);
        benchmark::DoNotOptimize(code.encode(msg, key));
    }
}
BENCHMARK(BM_CosetEncode)->Arg(4)->Arg(8)->Arg(16);

void BM_CosetDecode(benchmark::State& state) {
    const std::size_t L = static_cast<std::size_t>(state.range(0));
    const coset::CosetCode code(Field::gf256(), L, 1, L - 1);
    SeededEntropy e(3);
    std::vector<Symbol> msg(L - 2, 9);
    const auto x = code.encode(msg, code.keygen(e));
    std::vector<coset::ObservedShare> obs;
    for (std::size_t l = 1; l < L; ++l) obs.push_back({l, x.shares[l]});
    for (auto _ : state) benchmark::DoNotOptimize(code.decode(obs));
}
BENCHMARK(BM_CosetDecode)->Arg(4)->Arg(8)->Arg(16);

void BM_SplitJoin(benchmark::State& state) {
    const std::size_t bytes = static_cast<std::size_t>(state.range(0));
    const std::vector<std::vector<std::uint8_t>> src{random_bytes(bytes, 4), random_bytes(bytes, 5)};
    for (auto _ : state) {
        SeededEntropy e(6);
        const auto shares = share::split(3, 1, FieldSpec::binary8(), src, e);
        benchmark::DoNotOptimize(share::join(shares));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(2 * bytes));
}
BENCHMARK(BM_SplitJoin)->Arg(1 << 10)->Arg(1 << 16);

void BM_SuperpositionRegion(benchmark::State& state) {
    const std::size_t L = static_cast<std::size_t>(state.range(0));
    const std::vector<Rational> h(L - 1, Rational(1));
    for (auto _ : state) benchmark::DoNotOptimize(region::superposition_region(L, 1, h));
}
BENCHMARK(BM_SuperpositionRegion)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LpMinSum(benchmark::State& state) {
    const std::size_t L = static_cast<std::size_t>(state.range(0));
    const auto sys = region::region(L, L / 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(region::lp_min_sum(sys));
}
BENCHMARK(BM_LpMinSum)->Arg(4)->Arg(6);

void BM_VerifierRunAll(benchmark::State& state) {
    const auto layout = multilevel::plan({4, 2, Field::gf(5), {1, static_cast<std::size_t>(state.range(0))}});
    verify::Budget budget;
    budget.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(verify::run_all(verify::smdc_instance(layout), budget));
}
BENCHMARK(BM_VerifierRunAll)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
