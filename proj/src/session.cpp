#include "vanetauth/session.hpp"

namespace vanetauth {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Discovery: return "Discovery";
    case Phase::AwaitGraph: return "AwaitGraph";
    case Phase::ProofVerify: return "ProofVerify";
    case Phase::ProofProve: return "ProofProve";
    case Phase::Exchange: return "Exchange";
    case Phase::Established: return "Established";
    case Phase::Failed: return "Failed";
  }
  return "?";
}

const char* to_string(Failure f) {
  switch (f) {
    case Failure::None: return "None";
    case Failure::NoCommonKey: return "NoCommonKey";
    case Failure::PhaseViolation: return "PhaseViolation";
    case Failure::ProofRejected: return "ProofRejected";
    case Failure::UnsealFailure: return "UnsealFailure";
    case Failure::BadWitnessGraph: return "BadWitnessGraph";
    case Failure::NoChain: return "NoChain";
    case Failure::Malformed: return "Malformed";
    case Failure::Timeout: return "Timeout";
    case Failure::PeerAbort: return "PeerAbort";
  }
  return "?";
}

AuthSession::AuthSession(const Node& self, SessionParams params, Rng rng, Timestamp now)
    : self_(self), params_(params), rng_(std::move(rng)), now_(now), last_activity_(now) {
  if (params_.rounds < 1) throw std::invalid_argument("at least one proof round is required");
}

std::vector<Message> AuthSession::start() {
  if (started_) return {};
  started_ = true;
  history_.push_back(Phase::Discovery);
  own_nonce_ = rng_.next();
  return {offer_message(make_offer(self_.store, own_nonce_))};
}

bool AuthSession::check_timeout(Timestamp now) {
  if (terminal() || now - last_activity_ <= params_.timeout) return false;
  fail(Failure::Timeout, false);
  return true;
}

std::vector<Message> AuthSession::advance(const Message& incoming, Timestamp now) {
  if (terminal()) return {};
  if (!started_) return fail(Failure::PhaseViolation);
  if (now - last_activity_ > params_.timeout) return fail(Failure::Timeout);
  last_activity_ = now;
  now_ = now;
  if (incoming.type == MessageType::Abort) return fail(Failure::PeerAbort, false);

  try {
    switch (phase_) {
      case Phase::Discovery:
        if (incoming.type == MessageType::Offer) return on_offer(incoming);
        break;
      case Phase::AwaitGraph:
        if (incoming.type == MessageType::WitnessGraph) return on_graph(incoming);
        break;
      case Phase::ProofVerify:
        if (!pending_iso_ && incoming.type == MessageType::Commit) return on_commit(incoming);
        if (pending_iso_ && incoming.type == MessageType::Response) return on_response(incoming);
        break;
      case Phase::ProofProve:
        if (incoming.type == MessageType::Challenge) return on_challenge(incoming);
        break;
      case Phase::Exchange:
        return on_exchange(incoming);
      case Phase::Established:
      case Phase::Failed:
        return {};
    }
  } catch (const MalformedMessage&) {
    return fail(Failure::Malformed);
  } catch (const std::invalid_argument&) {
    return fail(Failure::Malformed);
  }
  return fail(Failure::PhaseViolation);
}

std::vector<Message> AuthSession::on_offer(const Message& m) {
  DiscoveryOffer offer = parse_offer(m);
  std::vector<NodeId> matches = discovery_match(offer, self_.store);
  if (matches.empty()) return fail(Failure::NoCommonKey, false);

  Pseudonym mine = self_.store.pseudonym();
  peer_pseudonym_ = offer.sender;
  if (mine != offer.sender) {
    initiator_ = mine < offer.sender;
  } else if (own_nonce_ != offer.nonce) {
    initiator_ = own_nonce_ < offer.nonce;
  } else {
    return fail(Failure::PhaseViolation);
  }

  common_key_ = select_common_key(matches, self_.store);
  own_witness_ = build_witness_graph(*common_key_, params_.witness_vertices, params_.decoy_density, rng_);
  enter(Phase::AwaitGraph);
  if (*initiator_) return {graph_message(MessageType::WitnessGraph, own_witness_->graph)};
  return {};
}

std::vector<Message> AuthSession::on_graph(const Message& m) {
  EdgeSet g = parse_graph(m);
  const int n = params_.witness_vertices;
  if (g.vertex_count() != n) return fail(Failure::BadWitnessGraph);
  // The peer's graph must embed the cycle both sides derive from x.
  if (!g.contains_all(cycle_edges(n, cycle_from_shared_key(*common_key_, n)))) {
    return fail(Failure::BadWitnessGraph);
  }
  peer_graph_ = std::move(g);
  if (*initiator_) return begin_proving();
  enter(Phase::ProofVerify);
  return {graph_message(MessageType::WitnessGraph, own_witness_->graph)};
}

std::vector<Message> AuthSession::begin_proving() {
  enter(Phase::ProofProve);
  pending_commitment_ = prover_commit(*own_witness_, rng_);
  return {graph_message(MessageType::Commit, pending_commitment_.iso_graph)};
}

std::vector<Message> AuthSession::on_challenge(const Message& m) {
  bool challenge = parse_challenge(m);
  std::vector<Message> out{response_message(prover_respond(pending_commitment_, *own_witness_, challenge))};
  ++rounds_proved_;
  if (rounds_proved_ < params_.rounds) {
    pending_commitment_ = prover_commit(*own_witness_, rng_);
    out.push_back(graph_message(MessageType::Commit, pending_commitment_.iso_graph));
  } else {
    pending_commitment_ = {};
    enter(*initiator_ ? Phase::ProofVerify : Phase::Exchange);
  }
  return out;
}

std::vector<Message> AuthSession::on_commit(const Message& m) {
  pending_iso_ = parse_graph(m);
  pending_challenge_ = verifier_challenge(rng_);
  return {challenge_message(*pending_challenge_)};
}

std::vector<Message> AuthSession::on_response(const Message& m) {
  RoundResponse resp = parse_response(m);
  bool ok = verifier_check(*peer_graph_, *pending_iso_, *pending_challenge_, resp);
  pending_iso_.reset();
  pending_challenge_.reset();
  if (!ok) return fail(Failure::ProofRejected);
  ++rounds_verified_;
  if (rounds_verified_ < params_.rounds) return {};
  if (*initiator_) return begin_exchange();
  return begin_proving();
}

std::vector<Message> AuthSession::begin_exchange() {
  enter(Phase::Exchange);
  sent_e1_ = true;
  return {blob_message(MessageType::SealedKey,
                       seal(derive_key(*common_key_), encode_public_key(self_.identity.public_key()), rng_))};
}

std::vector<Message> AuthSession::on_exchange(const Message& m) {
  std::vector<Message> out;
  switch (m.type) {
    case MessageType::SealedKey: {
      if (peer_key_) return fail(Failure::PhaseViolation);
      try {
        peer_key_ = decode_public_key(open(derive_key(*common_key_), m.payload));
      } catch (const AuthFailure&) {
        return fail(Failure::UnsealFailure);
      }
      if (peer_key_->modulus < 4) return fail(Failure::Malformed);
      own_temporal_ = rng_.between(2, peer_key_->modulus - 1);
      out.push_back(integer_message(MessageType::SealedTemporal, rsa_public(*own_temporal_, *peer_key_)));
      sent_e2_ = true;
      if (!sent_e1_) {
        sent_e1_ = true;
        out.push_back(blob_message(
            MessageType::SealedKey,
            seal(derive_key(*common_key_), encode_public_key(self_.identity.public_key()), rng_)));
      }
      break;
    }
    case MessageType::SealedTemporal: {
      if (!sent_e1_ || peer_temporal_) return fail(Failure::PhaseViolation);
      peer_temporal_ = rsa_private(parse_integer(m), self_.identity.keys);
      out.push_back(blob_message(MessageType::SealedStore,
                                 seal(derive_key(*peer_temporal_), encode_store(self_.store), rng_)));
      sent_e3_ = true;
      break;
    }
    case MessageType::SealedStore: {
      if (!sent_e2_ || peer_store_) return fail(Failure::PhaseViolation);
      Bytes plain;
      try {
        plain = open(derive_key(*own_temporal_), m.payload);
      } catch (const AuthFailure&) {
        return fail(Failure::UnsealFailure);
      }
      peer_store_ = decode_store(plain, params_.lim);
      break;
    }
    default:
      return fail(Failure::PhaseViolation);
  }
  if (peer_store_ && peer_temporal_ && sent_e3_) finish();
  return out;
}

void AuthSession::finish() {
  const NodeId peer_id = peer_store_->owner();
  if (peer_id == self_.id() || peer_store_->graph().vertex(peer_id).key != *peer_key_) {
    fail(Failure::NoChain, false);
    return;
  }
  CertificateGraph merged = merge_stores(self_.store, *peer_store_);
  auto chain = find_certificate_chain(merged, self_.id(), peer_id);
  if (!chain) {
    fail(Failure::NoChain, false);
    return;
  }
  ChainVerdict verdict = verify_chain(*chain, merged, now_);
  if (!verdict || verdict.endpoint_key != *peer_key_) {
    fail(Failure::NoChain, false);
    return;
  }

  KeyStore updated = update_keystore(self_.store, *peer_store_, params_.lim);
  if (updated.contains(peer_id)) {
    VertexInfo& info = updated.graph().vertex(peer_id);
    info.pseudonym = peer_pseudonym_;
    info.secret_key = *peer_temporal_;
  }
  std::uint64_t k_init = *initiator_ ? *own_temporal_ : *peer_temporal_;
  std::uint64_t k_resp = *initiator_ ? *peer_temporal_ : *own_temporal_;
  Bytes material;
  append_u64(material, k_init);
  append_u64(material, k_resp);

  peer_ = PeerMaterial{peer_id,       *peer_key_,         peer_pseudonym_,
                       *own_temporal_, *peer_temporal_,   *peer_store_,
                       derive_key(material)};
  updated_ = std::move(updated);
  enter(Phase::Established);
}

std::vector<Message> AuthSession::fail(Failure f, bool notify) {
  failure_ = f;
  enter(Phase::Failed);
  if (!notify) return {};
  return {abort_message(static_cast<std::uint8_t>(f))};
}

void AuthSession::enter(Phase p) {
  phase_ = p;
  history_.push_back(p);
}

const PeerMaterial& AuthSession::peer() const {
  if (!peer_) throw std::logic_error("session is not established");
  return *peer_;
}

const KeyStore& AuthSession::updated_store() const {
  if (!updated_) throw std::logic_error("session is not established");
  return *updated_;
}

Bytes AuthSession::seal_for_peer(std::span<const std::uint8_t> plaintext) {
  return seal(peer().session_key, plaintext, rng_);
}

Bytes AuthSession::open_from_peer(std::span<const std::uint8_t> envelope) const {
  return open(peer().session_key, envelope);
}

}  // namespace vanetauth
