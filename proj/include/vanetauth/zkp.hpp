#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "vanetauth/hamiltonian.hpp"
#include "vanetauth/rng.hpp"

namespace vanetauth {

inline constexpr int kDefaultWitnessVertices = 12;
inline constexpr double kDefaultDecoyDensity = 0.5;
inline constexpr int kDefaultProofRounds = 20;

/// Graph with a Hamiltonian cycle only its builder is meant to know.
struct WitnessGraph {
  EdgeSet graph;
  Cycle cycle;  // embedded witness, canonical form

  int vertex_count() const { return graph.vertex_count(); }
  /// True when the graph has edges beyond the cycle.
  bool has_decoys() const { return graph.edge_count() > cycle.size(); }
};

/// Cycle both holders of the shared key derive from it: the low
/// n(n-1)/2 bits of x when they form a cycle, otherwise a permutation of
/// 0..n-1 seeded by SHA-256(x || counter).
Cycle cycle_from_shared_key(std::uint64_t x, int n);

/// Throws NotACycle (propagated from decoding) only for impossible sizes.
WitnessGraph build_witness_graph(std::uint64_t x, int n, double decoy_density, Rng& rng);
WitnessGraph build_witness_graph(const Cycle& cycle, double decoy_density, Rng& rng);

/// Z1: permuted copy, published; the permutation stays with the prover.
struct RoundCommitment {
  EdgeSet iso_graph;
  Permutation permutation;
};

struct IsomorphismReveal {
  Permutation permutation;
};
struct CycleReveal {
  Cycle cycle;
};
/// Z3: exactly one of the two secrets per round.
using RoundResponse = std::variant<IsomorphismReveal, CycleReveal>;

RoundCommitment prover_commit(const WitnessGraph& g, Rng& rng);
/// Commitment under a caller-chosen permutation (test hook).
RoundCommitment prover_commit_with(const WitnessGraph& g, Permutation perm);
/// Z2: uniform bit; true asks for the cycle.
bool verifier_challenge(Rng& rng);
RoundResponse prover_respond(const RoundCommitment& commitment, const WitnessGraph& g, bool challenge);
/// challenge=false: accept iff the response is a bijection mapping g_public
/// exactly onto iso_graph. challenge=true: accept iff the response is a
/// Hamiltonian cycle of iso_graph. The wrong variant is rejected.
bool verifier_check(const EdgeSet& g_public, const EdgeSet& iso_graph, bool challenge,
                    const RoundResponse& response);

struct RoundTranscript {
  EdgeSet iso_graph;
  bool challenge = false;
  RoundResponse response;
  bool accepted = false;
};

/// No round may expose both the permutation and a cycle.
bool reveals_single_secret(const RoundTranscript& round);
/// The revealed secret is the kind the challenge asked for.
bool answers_challenge(const RoundTranscript& round);

/// Prover side of one proof, seen as a black box by run_proof.
class Prover {
 public:
  virtual ~Prover() = default;
  virtual EdgeSet commit() = 0;
  virtual RoundResponse respond(bool challenge) = 0;
};

class HonestProver final : public Prover {
 public:
  HonestProver(const WitnessGraph& g, Rng rng) : g_(g), rng_(std::move(rng)) {}
  EdgeSet commit() override;
  RoundResponse respond(bool challenge) override;

 private:
  const WitnessGraph& g_;
  Rng rng_;
  RoundCommitment current_;
};

/// Knows the public graph but no Hamiltonian cycle of it. Each round it
/// guesses the challenge and prepares only the matching answer: an honest
/// permuted copy for 0, or a look-alike graph with a planted cycle for 1.
class ChallengeGuessingCheater final : public Prover {
 public:
  ChallengeGuessingCheater(const EdgeSet& g_public, Rng rng) : g_(g_public), rng_(std::move(rng)) {}
  EdgeSet commit() override;
  RoundResponse respond(bool challenge) override;

 private:
  EdgeSet g_;
  Rng rng_;
  bool guess_ = false;
  Permutation perm_;
  Cycle planted_;
};

struct ProofOutcome {
  bool accepted = false;
  int rounds_run = 0;
  std::vector<RoundTranscript> transcript;
};

/// Interactive proof: `rounds` fresh commit/challenge/response rounds,
/// aborting on the first rejection.
ProofOutcome run_proof(Prover& prover, const EdgeSet& verifier_view, int rounds, Rng& verifier_rng);
ProofOutcome run_proof(const WitnessGraph& prover_graph, const EdgeSet& verifier_view, int rounds,
                       Rng& rng);

}  // namespace vanetauth
