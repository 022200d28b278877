#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "vanetauth/messages.hpp"
#include "vanetauth/proof_batch.hpp"
#include "vanetauth/zkp.hpp"

using namespace vanetauth;

namespace {

WitnessGraph witness(std::uint64_t seed, int n = kDefaultWitnessVertices, double density = kDefaultDecoyDensity) {
  Rng rng(seed);
  return build_witness_graph(rng.next(), n, density, rng);
}

}  // namespace

TEST(Witness, SharedKeyCycle) {
  EXPECT_EQ(cycle_from_shared_key(7, 3), (Cycle{0, 1, 2}));
  EXPECT_EQ(cycle_from_shared_key(45, 4), (Cycle{0, 1, 2, 3}));
  EXPECT_EQ(cycle_from_shared_key(45 + 64, 4), (Cycle{0, 1, 2, 3}));  // only the low 6 bits count
  Cycle fallback = cycle_from_shared_key(46, 4);
  EXPECT_EQ(fallback, cycle_from_shared_key(46, 4));
  EXPECT_TRUE(is_permutation_of_range(fallback, 4));
  for (std::uint64_t x : {1ull, 12345ull, 0xdeadbeefcafef00dull}) {
    Cycle c = cycle_from_shared_key(x, 12);
    EXPECT_TRUE(is_permutation_of_range(c, 12));
    EXPECT_EQ(c, canonical_cycle(c));
  }
  EXPECT_NE(cycle_from_shared_key(1, 12), cycle_from_shared_key(2, 12));
}

TEST(Witness, GraphEmbedsCycleAndDecoys) {
  Rng rng(1);
  WitnessGraph w = build_witness_graph(999, 12, 0.5, rng);
  EXPECT_TRUE(is_hamiltonian_cycle(w.graph, w.cycle));
  EXPECT_EQ(w.cycle, cycle_from_shared_key(999, 12));
  EXPECT_TRUE(w.has_decoys());
  WitnessGraph bare = build_witness_graph(999, 12, 0.0, rng);
  EXPECT_FALSE(bare.has_decoys());
  EXPECT_EQ(bare.graph.edge_count(), 12u);
  WitnessGraph full = build_witness_graph(999, 6, 1.0, rng);
  EXPECT_EQ(full.graph.edge_count(), 15u);
}

TEST(Rounds, HonestAnswersAreAccepted) {
  WitnessGraph w = witness(3);
  Rng rng(4);
  for (bool challenge : {false, true}) {
    RoundCommitment c = prover_commit(w, rng);
    RoundResponse r = prover_respond(c, w, challenge);
    EXPECT_TRUE(verifier_check(w.graph, c.iso_graph, challenge, r));
    // the other kind of answer never satisfies this challenge
    RoundResponse other = prover_respond(c, w, !challenge);
    EXPECT_FALSE(verifier_check(w.graph, c.iso_graph, challenge, other));
  }
}

TEST(Rounds, VerifierRejectsBadResponses) {
  WitnessGraph w = witness(5);
  Rng rng(6);
  RoundCommitment c = prover_commit(w, rng);
  Permutation p = c.permutation;
  std::swap(p[0], p[1]);
  if (w.graph.permuted(p) != c.iso_graph) {
    EXPECT_FALSE(verifier_check(w.graph, c.iso_graph, false, IsomorphismReveal{p}));
  }
  Permutation not_bijective(p.size(), 0);
  EXPECT_FALSE(verifier_check(w.graph, c.iso_graph, false, IsomorphismReveal{not_bijective}));
  Cycle mapped = vanetauth::apply(c.permutation, w.cycle);
  std::reverse(mapped.begin() + 1, mapped.begin() + 4);
  if (!is_hamiltonian_cycle(c.iso_graph, mapped)) {
    EXPECT_FALSE(verifier_check(w.graph, c.iso_graph, true, CycleReveal{mapped}));
  }
  EXPECT_FALSE(verifier_check(w.graph, c.iso_graph, true, CycleReveal{Cycle{0, 1, 2}}));
  EXPECT_FALSE(verifier_check(w.graph, EdgeSet(5), true, prover_respond(c, w, true)));
}

TEST(Rounds, CommitmentsAreFresh) {
  for (int n : {7, 12}) {
    WitnessGraph w = witness(8, n);
    Rng rng(9);
    std::set<Bytes> seen;
    for (int i = 0; i < 100; ++i) seen.insert(prover_commit(w, rng).iso_graph.pack());
    EXPECT_GE(seen.size(), 95u) << "n=" << n;
  }
}

TEST(Rounds, RevealedCycleIsAmbiguousWhenGraphHasSymmetry) {
  // complete graph on 6 vertices: many Hamiltonian cycles, every permutation an automorphism
  Rng rng(10);
  WitnessGraph w = build_witness_graph(Cycle{0, 2, 4, 1, 3, 5}, 1.0, rng);
  RoundCommitment c = prover_commit(w, rng);
  Cycle shown = std::get<CycleReveal>(prover_respond(c, w, true)).cycle;

  std::set<Cycle> preimages;
  Permutation sigma{0, 1, 2, 3, 4, 5};
  do {
    if (w.graph.permuted(sigma) != c.iso_graph) continue;
    preimages.insert(canonical_cycle(vanetauth::apply(invert(sigma), shown)));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  EXPECT_GE(preimages.size(), 2u);
  EXPECT_TRUE(preimages.contains(w.cycle));
}

TEST(Proofs, HonestProverAlwaysAccepted) {
  ProofTrialConfig cfg;
  cfg.trials = 100;
  cfg.rounds = 20;
  ProofTrialTally t = run_proof_trials_serial(cfg);
  EXPECT_EQ(t.accepted, 100u);
  EXPECT_EQ(t.rounds_run, 2000u);
  EXPECT_EQ(t.secrecy_violations, 0u);
}

TEST(Proofs, CheaterPassesHalfTheRounds) {
  ProofTrialConfig cfg;
  cfg.cheater = true;
  cfg.rounds = 1;
  cfg.trials = 2000;
  ProofTrialTally t = run_proof_trials_serial(cfg);
  EXPECT_NEAR(t.acceptance_rate(), 0.5, 0.05);
  cfg.rounds = 20;
  cfg.trials = 200;
  EXPECT_EQ(run_proof_trials_serial(cfg).accepted, 0u);
}

TEST(Proofs, TranscriptAnswersOnlyWhatWasAsked) {
  WitnessGraph w = witness(12);
  Rng rng(13);
  ProofOutcome out = run_proof(w, w.graph, 20, rng);
  ASSERT_TRUE(out.accepted);
  ASSERT_EQ(out.transcript.size(), 20u);
  for (const auto& round : out.transcript) {
    EXPECT_TRUE(reveals_single_secret(round));
    EXPECT_TRUE(answers_challenge(round));
    Message m = response_message(round.response);
    EXPECT_EQ(m.payload.size(), 2u + w.vertex_count());
  }
}

TEST(Proofs, CheaterWrongGuessIsWrongVariant) {
  WitnessGraph w = witness(14);
  Rng prover_rng(15), verifier_rng(16);
  ChallengeGuessingCheater cheater(w.graph, Rng(17));
  ProofOutcome out = run_proof(cheater, w.graph, 40, verifier_rng);
  EXPECT_FALSE(out.accepted);
  ASSERT_FALSE(out.transcript.empty());
  const RoundTranscript& last = out.transcript.back();
  EXPECT_FALSE(last.accepted);
  EXPECT_FALSE(answers_challenge(last));
  EXPECT_TRUE(reveals_single_secret(last));
}

TEST(Proofs, ParallelMatchesSerial) {
  for (bool cheater : {false, true}) {
    ProofTrialConfig cfg;
    cfg.cheater = cheater;
    cfg.trials = 300;
    cfg.rounds = 5;
    cfg.seed = 77;
    EXPECT_EQ(run_proof_trials_serial(cfg), run_proof_trials_parallel(cfg));
  }
}
