// Serial reference vs OpenMP runners for proof trials and simulation experiments.

#include <benchmark/benchmark.h>

#include "vanetauth/proof_batch.hpp"
#include "vanetauth/sim.hpp"

using namespace vanetauth;

namespace {

ProofTrialConfig proof_config(bool cheater) {
  ProofTrialConfig cfg;
  cfg.trials = 200;
  cfg.cheater = cheater;
  return cfg;
}

sim::SimConfig sim_config() {
  sim::SimConfig cfg;
  cfg.node_count = 15;
  cfg.runs = 8;
  cfg.duration = 200;
  return cfg;
}

void BM_ProofTrialsSerial(benchmark::State& state) {
  ProofTrialConfig cfg = proof_config(state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(run_proof_trials_serial(cfg));
}

void BM_ProofTrialsParallel(benchmark::State& state) {
  ProofTrialConfig cfg = proof_config(state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(run_proof_trials_parallel(cfg));
}

void BM_ExperimentSerial(benchmark::State& state) {
  sim::SimConfig cfg = sim_config();
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_experiment_serial(cfg));
}

void BM_ExperimentParallel(benchmark::State& state) {
  sim::SimConfig cfg = sim_config();
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_experiment_parallel(cfg));
}

}  // namespace

BENCHMARK(BM_ProofTrialsSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProofTrialsParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
