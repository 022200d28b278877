#pragma once

#include <cstddef>
#include <cstdint>

#include "vanetauth/zkp.hpp"

namespace vanetauth {

/// Independent proof sessions, each with its own derived random stream, so
/// the serial and parallel runners produce identical tallies.
struct ProofTrialConfig {
  int vertices = kDefaultWitnessVertices;
  double decoy_density = kDefaultDecoyDensity;
  int rounds = kDefaultProofRounds;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool cheater = false;
};

struct ProofTrialTally {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  std::size_t rounds_run = 0;
  std::size_t rounds_accepted = 0;
  /// Rounds whose transcript exposed more than one secret kind.
  std::size_t secrecy_violations = 0;

  double acceptance_rate() const { return trials ? static_cast<double>(accepted) / trials : 0.0; }
  friend bool operator==(const ProofTrialTally&, const ProofTrialTally&) = default;
};

/// Outcome of trial `index`; shared by both runners.
ProofTrialTally run_proof_trial(const ProofTrialConfig& cfg, std::size_t index);

ProofTrialTally run_proof_trials_serial(const ProofTrialConfig& cfg);
ProofTrialTally run_proof_trials_parallel(const ProofTrialConfig& cfg);

}  // namespace vanetauth
