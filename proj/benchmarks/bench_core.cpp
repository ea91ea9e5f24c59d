#include <benchmark/benchmark.h>

#include "clusterfid/bench.hpp"
#include "clusterfid/refocus.hpp"
#include "clusterfid/teleport.hpp"

using namespace cfid;

static void BM_Apply2q(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<SingleQubitState> qs(static_cast<size_t>(n),
                                     SingleQubitState{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    auto st = StateVector::product_state(qs);
    const Mat4 gate = u_xy(kPi / 4, 0.01);
    int b = 1;
    for (auto _ : state) {
        st.apply_2q(b, b + 1, gate);
        b = b % (n - 1) + 1;
        benchmark::DoNotOptimize(st.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_Apply2q)->Arg(5)->Arg(9)->Arg(11);

static void BM_TeleportFidelity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainSpec spec{InteractionKind::ZZ, n, ErrorModel::uniform(0.2)};
    const BlochOrientation r{1.1, 0.7};
    for (auto _ : state) {
        auto rep = teleport_fidelity(spec, r);
        benchmark::DoNotOptimize(rep.weighted_fidelity);
    }
}
BENCHMARK(BM_TeleportFidelity)->Arg(5)->Arg(7)->Arg(9);

static void BM_BranchTransfers(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BondErrors errors(static_cast<size_t>(n - 1), 0.2);
    for (auto _ : state) {
        auto tr = branch_transfers(InteractionKind::ZZ, n, errors);
        benchmark::DoNotOptimize(tr.data());
    }
}
BENCHMARK(BM_BranchTransfers)->Arg(5)->Arg(9);

static void BM_TransferEvaluate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BondErrors errors(static_cast<size_t>(n - 1), 0.2);
    const auto tr = branch_transfers(InteractionKind::ZZ, n, errors);
    Rng rng(1);
    for (auto _ : state) {
        const auto r = sample_bloch_uniform(rng);
        benchmark::DoNotOptimize(
            weighted_fidelity(tr, state_from_orientation(r), ByproductVariant::Standard));
    }
}
BENCHMARK(BM_TransferEvaluate)->Arg(5)->Arg(9);

static void BM_RefreshTeleport(benchmark::State& state) {
    const ChainSpec spec{InteractionKind::XY, static_cast<int>(state.range(0)),
                         ErrorModel::uniform(0.2)};
    const BlochOrientation r{0.9, 2.3};
    for (auto _ : state) {
        auto rep = refresh_teleport(spec, r, 3);
        benchmark::DoNotOptimize(rep.weighted_fidelity);
    }
}
BENCHMARK(BM_RefreshTeleport)->Arg(5)->Arg(9);

static void BM_VcpCompose(benchmark::State& state) {
    for (auto _ : state) {
        auto g = v_cp(kPi / 4, 1e-3);
        benchmark::DoNotOptimize(g.matrix.a.data());
    }
}
BENCHMARK(BM_VcpCompose);

BENCHMARK_MAIN();
