#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "vanetauth/beacon.hpp"
#include "vanetauth/zkp.hpp"

namespace vanetauth {

enum class MessageType : std::uint8_t {
  Offer = 1,           // D1
  WitnessGraph = 2,    // D2
  Commit = 3,          // Z1
  Challenge = 4,       // Z2
  Response = 5,        // Z3
  SealedKey = 6,       // E1: E_x(KU)
  SealedTemporal = 7,  // E2: KU_peer(K)
  SealedStore = 8,     // E3: E_K(KS)
  Abort = 9,
};

/// Short label used in transcripts ("D1", "Z3", ...).
const char* label(MessageType t);
/// 'D', 'Z', 'E', or 'A' for Abort.
char phase_letter(MessageType t);

struct Message {
  MessageType type{};
  Bytes payload;

  friend bool operator==(const Message&, const Message&) = default;
};

class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Length-prefixed typed record: type(1) || length(4, big-endian) || payload.
Bytes encode_message(const Message& m);
Message decode_message(std::span<const std::uint8_t> wire);

Message offer_message(const DiscoveryOffer& offer);
DiscoveryOffer parse_offer(const Message& m);

Message graph_message(MessageType type, const EdgeSet& g);  // D2 and Z1
EdgeSet parse_graph(const Message& m);

Message challenge_message(bool challenge);
bool parse_challenge(const Message& m);

/// Z3 payload: tag (0 = permutation, 1 = cycle) || count || vertices.
Message response_message(const RoundResponse& r);
RoundResponse parse_response(const Message& m);

Message blob_message(MessageType type, Bytes blob);  // E1, E3
Message integer_message(MessageType type, std::uint64_t v);  // E2
std::uint64_t parse_integer(const Message& m);

Message abort_message(std::uint8_t reason);

Bytes encode_public_key(const PublicKey& k);
PublicKey decode_public_key(std::span<const std::uint8_t> b);

/// Key store as transported in E3: owner, vertex keys and certificate pairs.
/// Local metadata (pseudonyms, temporal keys) is not included.
Bytes encode_store(const KeyStore& store);
/// Every certificate pair is re-verified; throws MalformedMessage. The limit
/// is raised to the sender's store size when that is larger.
KeyStore decode_store(std::span<const std::uint8_t> b, std::size_t lim);

}  // namespace vanetauth
