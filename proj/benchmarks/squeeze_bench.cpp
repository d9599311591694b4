#include <benchmark/benchmark.h>

#include "squeeze/analysis.hpp"
#include "squeeze/dynamics.hpp"

namespace {

using namespace squeeze;

SystemParams reference_params(int n_max) {
  SystemParams p;
  p.lambda_g = p.lambda_e = p.omega_rabi = 3e5;
  p.delta = 4.5e6;
  p.big_delta = 1.6e5;
  p.n_max = n_max;
  return p;
}

void BM_ApplySqueeze(benchmark::State& state) {
  const FockBasis basis(static_cast<int>(state.range(0)));
  const StateVector vac = StateVector::fock(basis, 0);
  const SqueezeTransform s(1.0, 0.3, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_squeeze(vac, s, LeakagePolicy::Record));
  }
}
BENCHMARK(BM_ApplySqueeze)->Arg(31)->Arg(63)->Arg(127);

// Effective single-mode evolution over a fixed slice of the reference run.
void BM_EvolveEffective(benchmark::State& state) {
  const SystemParams p = reference_params(static_cast<int>(state.range(0)));
  const EffectiveParams eff = derive_effective(p);
  const FockBasis basis = p.basis();
  const EffectiveModeHamiltonian h(eff, basis);
  EvolutionConfig cfg;
  cfg.t_final = 1e-5;
  cfg.dt = stable_time_step(h, 0.02);
  cfg.stability_limit = 0.02;
  cfg.record_every = 1 << 30;
  cfg.leakage_policy = LeakagePolicy::Record;
  long steps = 0;
  for (auto _ : state) {
    const Trajectory traj = evolve_td(StateVector::fock(basis, 0), h, cfg);
    steps += traj.steps;
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_EvolveEffective)->Arg(31)->Arg(63)->Unit(benchmark::kMillisecond);

// One sparse H(t) psi product for the three-level model.
void BM_FullModelStep(benchmark::State& state) {
  const SystemParams p = reference_params(static_cast<int>(state.range(0)));
  const FockBasis basis = p.basis();
  const FullHamiltonian h(p, basis);
  const StateVector psi = StateVector::product(Level::i, StateVector::fock(basis, 0));
  Eigen::VectorXcd out(psi.dim());
  double t = 0.0;
  for (auto _ : state) {
    h.apply(t, psi.amplitudes(), out);
    benchmark::DoNotOptimize(out.data());
    t += 1e-9;
  }
}
BENCHMARK(BM_FullModelStep)->Arg(31)->Arg(63);

void BM_OffResonantPoint(benchmark::State& state) {
  const OffResonantInputs in{2.0, 2666.6666666666665, 0.0, 0.0, 0.0, 1.6e5};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(off_resonant_point(in, t));
    t = t < 5e-4 ? t + 1e-7 : 0.0;
  }
}
BENCHMARK(BM_OffResonantPoint);

}  // namespace
BENCHMARK_MAIN();
