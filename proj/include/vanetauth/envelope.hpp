#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "vanetauth/hash.hpp"
#include "vanetauth/rng.hpp"

namespace vanetauth {

/// 256-bit key for the authenticated envelope (ChaCha20-Poly1305, IETF).
struct SymmetricKey {
  std::array<std::uint8_t, 32> bytes{};
  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

/// Key = SHA-256 of the material's canonical byte form (8-byte big-endian
/// for integers).
SymmetricKey derive_key(std::uint64_t material);
SymmetricKey derive_key(std::span<const std::uint8_t> material);

class AuthFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;

/// Envelope layout: nonce(12) || ciphertext || tag(16). The nonce is drawn
/// from `rng` so seeded runs stay reproducible.
Bytes seal(const SymmetricKey& key, std::span<const std::uint8_t> plaintext, Rng& rng);
/// Throws AuthFailure on a wrong key or any modification.
Bytes open(const SymmetricKey& key, std::span<const std::uint8_t> envelope);

}  // namespace vanetauth
