#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vanetauth {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

/// SHA-256, the single hash used for identifiers, pseudonyms, message
/// digests and symmetric key derivation.
Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

std::string to_hex(std::span<const std::uint8_t> data);
/// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

/// Canonical 8-byte big-endian form of an integer.
std::array<std::uint8_t, 8> be_bytes(std::uint64_t v);
void append_u64(Bytes& out, std::uint64_t v);
void append_bytes(Bytes& out, std::span<const std::uint8_t> data);

/// Strong typedef over a 256-bit digest.
template <typename Tag>
struct DigestId {
  Digest bytes{};

  std::string hex() const { return to_hex(bytes); }
  std::string short_hex() const { return hex().substr(0, 8); }
  static DigestId from_hex_string(std::string_view s);

  friend auto operator<=>(const DigestId&, const DigestId&) = default;
};

template <typename Tag>
DigestId<Tag> DigestId<Tag>::from_hex_string(std::string_view s) {
  Bytes raw = from_hex(s);
  if (raw.size() != 32) throw std::invalid_argument("identifier must be 32 bytes of hex");
  DigestId id;
  std::copy(raw.begin(), raw.end(), id.bytes.begin());
  return id;
}

struct NodeIdTag {};
struct PseudonymTag {};

/// Hash of a stable seed value such as a phone number or e-mail address.
using NodeId = DigestId<NodeIdTag>;
/// Rotating identifier: hash of the IDs currently held in a key store.
using Pseudonym = DigestId<PseudonymTag>;

NodeId node_id(std::string_view seed);
/// Order-insensitive: the IDs are sorted before hashing.
Pseudonym pseudonym_of(std::vector<NodeId> ids);
/// h(ID) as carried in discovery offers.
Digest id_hash(const NodeId& id);

}  // namespace vanetauth
