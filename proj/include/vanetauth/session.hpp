#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vanetauth/envelope.hpp"
#include "vanetauth/messages.hpp"

namespace vanetauth {

enum class Phase { Discovery, AwaitGraph, ProofVerify, ProofProve, Exchange, Established, Failed };

enum class Failure : std::uint8_t {
  None = 0,
  NoCommonKey,
  PhaseViolation,
  ProofRejected,
  UnsealFailure,
  BadWitnessGraph,
  NoChain,
  Malformed,
  Timeout,
  PeerAbort,
};

const char* to_string(Phase p);
const char* to_string(Failure f);

struct SessionParams {
  int rounds = kDefaultProofRounds;
  int witness_vertices = kDefaultWitnessVertices;
  double decoy_density = kDefaultDecoyDensity;
  Timestamp timeout = 10;
  /// Bound applied to the key store rebuilt at the end of the handshake.
  std::size_t lim = 16;
};

/// What an established session learned about its peer.
struct PeerMaterial {
  NodeId id;
  PublicKey key;
  Pseudonym pseudonym;
  std::uint64_t own_temporal = 0;   // the K we sent (sealed under the peer's KU)
  std::uint64_t peer_temporal = 0;  // the K the peer sent us
  KeyStore store;
  SymmetricKey session_key;         // SHA-256(K_initiator || K_responder)
};

/// One side of the three-phase handshake. Discovery (D1-D2), zero-knowledge
/// proofs in both directions (Z1-Z3, initiator proves first), and key
/// exchange (E1-E3). The initiator is the side with the smaller pseudonym.
///
/// Messages are processed strictly in phase order; anything out of place
/// fails the session with PhaseViolation.
class AuthSession {
 public:
  AuthSession(const Node& self, SessionParams params, Rng rng, Timestamp now);

  /// Emits D1.
  std::vector<Message> start();
  std::vector<Message> advance(const Message& incoming, Timestamp now);
  /// Fails the session when idle for longer than the timeout.
  bool check_timeout(Timestamp now);

  Phase phase() const { return phase_; }
  Failure failure() const { return failure_; }
  bool established() const { return phase_ == Phase::Established; }
  bool terminal() const { return phase_ == Phase::Established || phase_ == Phase::Failed; }
  std::optional<bool> is_initiator() const { return initiator_; }
  const std::vector<Phase>& phase_history() const { return history_; }

  /// Valid once established.
  const PeerMaterial& peer() const;
  /// Own store rebuilt from the union with the peer's store.
  const KeyStore& updated_store() const;
  /// Shared key agreed during discovery (kept for tests; never sent).
  std::optional<std::uint64_t> common_key() const { return common_key_; }
  const Node& self() const { return self_; }

  Bytes seal_for_peer(std::span<const std::uint8_t> plaintext);
  Bytes open_from_peer(std::span<const std::uint8_t> envelope) const;

 private:
  std::vector<Message> on_offer(const Message& m);
  std::vector<Message> on_graph(const Message& m);
  std::vector<Message> on_commit(const Message& m);
  std::vector<Message> on_challenge(const Message& m);
  std::vector<Message> on_response(const Message& m);
  std::vector<Message> on_exchange(const Message& m);
  std::vector<Message> begin_proving();
  std::vector<Message> begin_exchange();
  std::vector<Message> fail(Failure f, bool notify = true);
  void enter(Phase p);
  void finish();

  Node self_;
  SessionParams params_;
  Rng rng_;
  Timestamp now_;
  Timestamp last_activity_;
  Phase phase_ = Phase::Discovery;
  Failure failure_ = Failure::None;
  std::vector<Phase> history_;
  bool started_ = false;
  std::uint64_t own_nonce_ = 0;

  std::optional<bool> initiator_;
  Pseudonym peer_pseudonym_;
  std::optional<std::uint64_t> common_key_;
  std::optional<WitnessGraph> own_witness_;
  std::optional<EdgeSet> peer_graph_;

  int rounds_proved_ = 0;
  int rounds_verified_ = 0;
  RoundCommitment pending_commitment_;
  std::optional<EdgeSet> pending_iso_;
  std::optional<bool> pending_challenge_;

  bool sent_e1_ = false;
  bool sent_e2_ = false;
  bool sent_e3_ = false;
  std::optional<PublicKey> peer_key_;
  std::optional<std::uint64_t> own_temporal_;
  std::optional<std::uint64_t> peer_temporal_;
  std::optional<KeyStore> peer_store_;

  std::optional<PeerMaterial> peer_;
  std::optional<KeyStore> updated_;
};

}  // namespace vanetauth
