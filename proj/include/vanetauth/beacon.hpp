#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vanetauth/keystore.hpp"

namespace vanetauth {

inline constexpr std::uint8_t kBeaconFrameControl = 1;

/// Periodic broadcast. On the wire:
///   "01," + address + "," + hex(pseudonym) + "," + hex(signed_identity)
/// where signed_identity = timestamp(8, big-endian) || signature(8, big-endian)
/// and the signature covers ID || KU || timestamp under the sender's KR.
struct Beacon {
  std::uint8_t frame_control = kBeaconFrameControl;
  std::string address;
  Pseudonym pseudonym;
  Timestamp timestamp = 0;
  Bytes signed_identity;

  friend bool operator==(const Beacon&, const Beacon&) = default;
};

class MalformedBeacon : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string encode_beacon(const Beacon& b);
Beacon decode_beacon(std::string_view record);

/// Beacon for the node's current store; also serves as the pseudonym refresh
/// after a store update (fresh timestamp, re-signed identity).
Beacon make_beacon(const Node& node, std::string address, Timestamp now);
Beacon refresh_pseudonym(const Node& node, std::string address, Timestamp now);

/// True when the beacon's signed identity verifies for (id, key): lets a peer
/// that already holds our KU link an old pseudonym to a new one.
bool beacon_links_to(const Beacon& b, const NodeId& id, const PublicKey& key);

/// D1 content: h(ID) for every ID in the sender's store.
struct DiscoveryOffer {
  Pseudonym sender;
  std::vector<Digest> id_hashes;  // sorted
  std::uint64_t nonce = 0;        // breaks role ties between equal pseudonyms

  friend bool operator==(const DiscoveryOffer&, const DiscoveryOffer&) = default;
};

DiscoveryOffer make_offer(const KeyStore& store, std::uint64_t nonce = 0);
/// IDs of `store` whose hash appears in the offer, sorted.
std::vector<NodeId> discovery_match(const DiscoveryOffer& offer, const KeyStore& store);
/// Public exponent of the smallest matching ID. `matches` must be non-empty.
std::uint64_t select_common_key(std::span<const NodeId> matches, const KeyStore& store);

}  // namespace vanetauth
