#include "vanetauth/zkp.hpp"

namespace vanetauth {

RoundCommitment prover_commit_with(const WitnessGraph& g, Permutation perm) {
  EdgeSet iso = g.graph.permuted(perm);
  return RoundCommitment{std::move(iso), std::move(perm)};
}

RoundCommitment prover_commit(const WitnessGraph& g, Rng& rng) {
  return prover_commit_with(g, random_permutation(g.vertex_count(), rng));
}

bool verifier_challenge(Rng& rng) { return rng.bit(); }

RoundResponse prover_respond(const RoundCommitment& commitment, const WitnessGraph& g, bool challenge) {
  if (!challenge) return IsomorphismReveal{commitment.permutation};
  return CycleReveal{vanetauth::apply(commitment.permutation, g.cycle)};
}

bool verifier_check(const EdgeSet& g_public, const EdgeSet& iso_graph, bool challenge,
                    const RoundResponse& response) {
  const int n = g_public.vertex_count();
  if (iso_graph.vertex_count() != n) return false;
  if (!challenge) {
    const auto* iso = std::get_if<IsomorphismReveal>(&response);
    if (iso == nullptr || !is_permutation_of_range(iso->permutation, n)) return false;
    return g_public.permuted(iso->permutation) == iso_graph;
  }
  const auto* cyc = std::get_if<CycleReveal>(&response);
  return cyc != nullptr && is_hamiltonian_cycle(iso_graph, cyc->cycle);
}

bool reveals_single_secret(const RoundTranscript& round) {
  return !round.response.valueless_by_exception();
}

bool answers_challenge(const RoundTranscript& round) {
  return round.challenge ? std::holds_alternative<CycleReveal>(round.response)
                         : std::holds_alternative<IsomorphismReveal>(round.response);
}

EdgeSet HonestProver::commit() {
  current_ = prover_commit(g_, rng_);
  return current_.iso_graph;
}

RoundResponse HonestProver::respond(bool challenge) {
  return prover_respond(current_, g_, challenge);
}

EdgeSet ChallengeGuessingCheater::commit() {
  const int n = g_.vertex_count();
  guess_ = rng_.bit();
  perm_ = random_permutation(n, rng_);
  if (!guess_) return g_.permuted(perm_);
  // Same edge count as the real graph, built around a cycle we know.
  planted_ = random_cycle(n, rng_);
  EdgeSet fake = cycle_edges(n, planted_);
  std::vector<std::pair<Vertex, Vertex>> spare;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!fake.has(u, v)) spare.emplace_back(u, v);
    }
  }
  rng_.shuffle(spare);
  for (std::size_t i = 0; fake.edge_count() < g_.edge_count() && i < spare.size(); ++i) {
    fake.add(spare[i].first, spare[i].second);
  }
  return fake;
}

RoundResponse ChallengeGuessingCheater::respond(bool challenge) {
  if (challenge == guess_) {
    if (challenge) return CycleReveal{planted_};
    return IsomorphismReveal{perm_};
  }
  // Unprepared: it can only offer the answer it has.
  if (guess_) return CycleReveal{planted_};
  return IsomorphismReveal{perm_};
}

ProofOutcome run_proof(Prover& prover, const EdgeSet& verifier_view, int rounds, Rng& verifier_rng) {
  if (rounds < 1) throw std::invalid_argument("a proof needs at least one round");
  ProofOutcome out;
  out.transcript.reserve(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    RoundTranscript t;
    t.iso_graph = prover.commit();
    t.challenge = verifier_challenge(verifier_rng);
    t.response = prover.respond(t.challenge);
    t.accepted = verifier_check(verifier_view, t.iso_graph, t.challenge, t.response);
    out.transcript.push_back(std::move(t));
    out.rounds_run = r + 1;
    if (!out.transcript.back().accepted) return out;
  }
  out.accepted = true;
  return out;
}

ProofOutcome run_proof(const WitnessGraph& prover_graph, const EdgeSet& verifier_view, int rounds,
                       Rng& rng) {
  HonestProver prover(prover_graph, Rng(rng.next()));
  return run_proof(prover, verifier_view, rounds, rng);
}

}  // namespace vanetauth
