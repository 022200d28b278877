#include "vanetauth/beacon.hpp"

#include <algorithm>

namespace vanetauth {

namespace {

Bytes identity_payload(const NodeId& id, const PublicKey& key, Timestamp ts) {
  Bytes out;
  append_bytes(out, id.bytes);
  append_bytes(out, key.to_bytes());
  append_u64(out, static_cast<std::uint64_t>(ts));
  return out;
}

std::uint64_t read_u64(std::span<const std::uint8_t> b) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | b[i];
  return v;
}

}  // namespace

std::string encode_beacon(const Beacon& b) {
  std::string tag = (b.frame_control < 10 ? "0" : "") + std::to_string(b.frame_control);
  return tag + "," + b.address + "," + b.pseudonym.hex() + "," + to_hex(b.signed_identity);
}

Beacon decode_beacon(std::string_view record) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = record.find(',', start);
    fields.push_back(record.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (fields.size() != 4) throw MalformedBeacon("beacon needs 4 fields");
  if (fields[0] != "01") throw MalformedBeacon("unexpected frame control tag");
  if (fields[1].empty()) throw MalformedBeacon("empty address");
  Beacon b;
  b.frame_control = kBeaconFrameControl;
  b.address = std::string(fields[1]);
  try {
    b.pseudonym = Pseudonym::from_hex_string(fields[2]);
    b.signed_identity = from_hex(fields[3]);
  } catch (const std::invalid_argument& e) {
    throw MalformedBeacon(e.what());
  }
  if (b.signed_identity.size() != 16) throw MalformedBeacon("signed identity must be 16 bytes");
  b.timestamp = static_cast<Timestamp>(read_u64(b.signed_identity));
  return b;
}

Beacon make_beacon(const Node& node, std::string address, Timestamp now) {
  Beacon b;
  b.address = std::move(address);
  b.pseudonym = node.store.pseudonym();
  b.timestamp = now;
  std::uint64_t sig = sign(identity_payload(node.id(), node.identity.public_key(), now), node.identity.keys);
  append_u64(b.signed_identity, static_cast<std::uint64_t>(now));
  append_u64(b.signed_identity, sig);
  return b;
}

Beacon refresh_pseudonym(const Node& node, std::string address, Timestamp now) {
  return make_beacon(node, std::move(address), now);
}

bool beacon_links_to(const Beacon& b, const NodeId& id, const PublicKey& key) {
  if (b.signed_identity.size() != 16) return false;
  auto ts = static_cast<Timestamp>(read_u64(b.signed_identity));
  std::uint64_t sig = read_u64(std::span(b.signed_identity).subspan(8));
  return ts == b.timestamp && verify(identity_payload(id, key, ts), sig, key);
}

DiscoveryOffer make_offer(const KeyStore& store, std::uint64_t nonce) {
  DiscoveryOffer o{store.pseudonym(), {}, nonce};
  for (const auto& id : store.ids()) o.id_hashes.push_back(id_hash(id));
  std::sort(o.id_hashes.begin(), o.id_hashes.end());
  return o;
}

std::vector<NodeId> discovery_match(const DiscoveryOffer& offer, const KeyStore& store) {
  std::vector<NodeId> out;
  for (const auto& id : store.ids()) {
    if (std::binary_search(offer.id_hashes.begin(), offer.id_hashes.end(), id_hash(id))) {
      out.push_back(id);
    }
  }
  return out;
}

std::uint64_t select_common_key(std::span<const NodeId> matches, const KeyStore& store) {
  if (matches.empty()) throw std::invalid_argument("no common key to select");
  const NodeId& pick = *std::min_element(matches.begin(), matches.end());
  return store.graph().vertex(pick).key.exponent;
}

}  // namespace vanetauth
