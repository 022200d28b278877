#include "vanetauth/envelope.hpp"

#include <sodium.h>

namespace vanetauth {

static_assert(crypto_aead_chacha20poly1305_ietf_NPUBBYTES == kNonceSize);
static_assert(crypto_aead_chacha20poly1305_ietf_ABYTES == kTagSize);
static_assert(crypto_aead_chacha20poly1305_ietf_KEYBYTES == 32);

SymmetricKey derive_key(std::uint64_t material) {
  auto b = be_bytes(material);
  return derive_key(std::span<const std::uint8_t>(b));
}

SymmetricKey derive_key(std::span<const std::uint8_t> material) {
  return SymmetricKey{sha256(material)};
}

Bytes seal(const SymmetricKey& key, std::span<const std::uint8_t> plaintext, Rng& rng) {
  // sha256() initialises libsodium; make sure that has happened.
  (void)sha256(std::span<const std::uint8_t>{});
  Bytes out(kNonceSize + plaintext.size() + kTagSize);
  rng.fill(std::span(out.data(), kNonceSize));
  unsigned long long written = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data() + kNonceSize, &written, plaintext.data(),
                                            plaintext.size(), nullptr, 0, nullptr, out.data(),
                                            key.bytes.data());
  out.resize(kNonceSize + written);
  return out;
}

Bytes open(const SymmetricKey& key, std::span<const std::uint8_t> envelope) {
  (void)sha256(std::span<const std::uint8_t>{});
  if (envelope.size() < kNonceSize + kTagSize) throw AuthFailure("envelope too short");
  Bytes plain(envelope.size() - kNonceSize - kTagSize);
  unsigned long long written = 0;
  int rc = crypto_aead_chacha20poly1305_ietf_decrypt(
      plain.data(), &written, nullptr, envelope.data() + kNonceSize, envelope.size() - kNonceSize,
      nullptr, 0, envelope.data(), key.bytes.data());
  if (rc != 0) throw AuthFailure("envelope authentication failed");
  plain.resize(written);
  return plain;
}

}  // namespace vanetauth
