#include <benchmark/benchmark.h>

#include "geonium/gates.hpp"

using namespace geonium;

namespace {

TrapConfig unit_trap() {
    TrapConfig t;
    t.B = 2.0;
    t.V0 = 1.0;
    t.d = 1.0;
    t.g_factor = 8.0;
    t.electron_charge_mag = 1.0;
    t.electron_mass = 1.0;
    t.hbar = 1.0;
    return t;
}

SimContext gate_context(double step) {
    HilbertSpec spec{2, 6, 3, 1};
    DriveConfig drv;
    drv.alpha_mag = 5.8925565098878960e-3;
    drv.k = 0.42426406871192851;
    SpinDriveConfig sd;
    sd.b = 0.125;
    return SimContext::make(spec, unit_trap(), drv, sd, step);
}

void BM_PropagatorBuild(benchmark::State& state) {
    const SimContext ctx = gate_context(0.0);
    DriveConfig drv;
    drv.alpha_mag = 5.8925565098878960e-3;
    drv.k = 0.42426406871192851;
    drv.Omega = 7.0;
    const Operator h = full_lab_frame(ctx.spec, unit_trap(), drv, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagator(h, 0.5));
    }
}
BENCHMARK(BM_PropagatorBuild);

void BM_ApplyExpm(benchmark::State& state) {
    const SimContext ctx = gate_context(0.0);
    const Operator h = sideband_minus(ctx.spec, 0.05, 0.3);
    const Matrix a = Complex(0.0, -1.0) * 0.7 * h.mat;
    Vector v = Vector::Zero(ctx.spec.dim());
    v(ctx.spec.index_of(kSpinDown, 1, 0)) = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_expm(a, v));
    }
}
BENCHMARK(BM_ApplyExpm);

void BM_MidpointSteps(benchmark::State& state) {
    const SimContext ctx = gate_context(0.02);
    DriveConfig drv;
    drv.alpha_mag = 5.8925565098878960e-3;
    drv.k = 0.42426406871192851;
    drv.Omega = 7.0;
    const TrapConfig trap = unit_trap();
    const StateVector start =
        StateVector::basis(ctx.spec, kSpinDown, 0, 0);
    const auto h_of_t = [&](double t) {
        return full_lab_frame(ctx.spec, trap, drv, t);
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve_timedep(h_of_t, start, 0.0, 0.2, 0.02));
    }
}
BENCHMARK(BM_MidpointSteps);

void BM_AxialTrig(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(axial_trig(12, 0.3, 0.4));
    }
}
BENCHMARK(BM_AxialTrig);

void BM_EffectiveCnPipeline(benchmark::State& state) {
    const SimContext ctx = gate_context(0.0);
    for (auto _ : state) {
        const PulseSequence seq = cn_sequence(ctx.couplings);
        benchmark::DoNotOptimize(
            extract_gate(seq, RunMode::Effective, ctx));
    }
}
BENCHMARK(BM_EffectiveCnPipeline);

} // namespace

BENCHMARK_MAIN();
