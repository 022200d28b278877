#include "vanetauth/proof_batch.hpp"

namespace vanetauth {

ProofTrialTally run_proof_trial(const ProofTrialConfig& cfg, std::size_t index) {
  Rng rng = Rng::derive(cfg.seed, index);
  const std::uint64_t x = rng.next();
  WitnessGraph witness = build_witness_graph(x, cfg.vertices, cfg.decoy_density, rng);
  Rng verifier_rng(rng.next());
  ProofOutcome outcome;
  if (cfg.cheater) {
    ChallengeGuessingCheater prover(witness.graph, Rng(rng.next()));
    outcome = run_proof(prover, witness.graph, cfg.rounds, verifier_rng);
  } else {
    HonestProver prover(witness, Rng(rng.next()));
    outcome = run_proof(prover, witness.graph, cfg.rounds, verifier_rng);
  }
  ProofTrialTally t;
  t.trials = 1;
  t.accepted = outcome.accepted ? 1 : 0;
  t.rounds_run = static_cast<std::size_t>(outcome.rounds_run);
  for (const auto& round : outcome.transcript) {
    if (round.accepted) ++t.rounds_accepted;
    if (!reveals_single_secret(round)) ++t.secrecy_violations;
  }
  return t;
}

ProofTrialTally run_proof_trials_serial(const ProofTrialConfig& cfg) {
  ProofTrialTally total;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    ProofTrialTally t = run_proof_trial(cfg, i);
    total.trials += t.trials;
    total.accepted += t.accepted;
    total.rounds_run += t.rounds_run;
    total.rounds_accepted += t.rounds_accepted;
    total.secrecy_violations += t.secrecy_violations;
  }
  return total;
}

ProofTrialTally run_proof_trials_parallel(const ProofTrialConfig& cfg) {
  std::size_t trials = 0, accepted = 0, rounds_run = 0, rounds_accepted = 0, violations = 0;
  const auto n = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 16) \
    reduction(+ : trials, accepted, rounds_run, rounds_accepted, violations)
  for (std::int64_t i = 0; i < n; ++i) {
    ProofTrialTally t = run_proof_trial(cfg, static_cast<std::size_t>(i));
    trials += t.trials;
    accepted += t.accepted;
    rounds_run += t.rounds_run;
    rounds_accepted += t.rounds_accepted;
    violations += t.secrecy_violations;
  }
  return ProofTrialTally{trials, accepted, rounds_run, rounds_accepted, violations};
}

}  // namespace vanetauth
