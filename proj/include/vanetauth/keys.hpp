#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "vanetauth/hamiltonian.hpp"
#include "vanetauth/hash.hpp"
#include "vanetauth/rng.hpp"

namespace vanetauth {

// Textbook RSA over 64-bit moduli (primes below 2^32). The construction is
// illustrative: no padding, no constant-time arithmetic.

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
/// Inverse of a modulo m, absent when gcd(a, m) != 1.
std::optional<std::uint64_t> modinv(std::uint64_t a, std::uint64_t m);
bool is_prime(std::uint64_t n);
/// Uniform prime with exactly `bits` bits (2 <= bits <= 32).
std::uint64_t random_prime(int bits, Rng& rng);

struct PublicKey {
  std::uint64_t exponent = 0;
  std::uint64_t modulus = 0;

  Bytes to_bytes() const;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct IdentityKeyPair {
  std::uint64_t modulus = 0;
  std::uint64_t public_exponent = 0;
  std::uint64_t private_exponent = 0;
  int cycle_vertices = 0;  // vertex count of the cycle behind public_exponent

  PublicKey public_key() const { return {public_exponent, modulus}; }
  friend bool operator==(const IdentityKeyPair&, const IdentityKeyPair&) = default;
};

class ExhaustedRetries : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kKeygenAttempts = 1000;

/// Draws random Hamiltonian cycles on `n_vertices` until the encoding e is
/// below and coprime with (p-1)(q-1), then derives d = e^-1.
IdentityKeyPair generate_keypair(std::uint64_t p, std::uint64_t q, int n_vertices, Rng& rng,
                                 int max_attempts = kKeygenAttempts);

/// Cycle whose encoding is the key's public exponent.
Cycle key_cycle(const IdentityKeyPair& key);

/// Message digest reduced below the modulus.
std::uint64_t digest_to_residue(std::span<const std::uint8_t> message, std::uint64_t modulus);

std::uint64_t sign(std::span<const std::uint8_t> message, const IdentityKeyPair& key);
bool verify(std::span<const std::uint8_t> message, std::uint64_t signature, const PublicKey& key);

/// Raw RSA operations on residues.
std::uint64_t rsa_public(std::uint64_t m, const PublicKey& key);
std::uint64_t rsa_private(std::uint64_t c, const IdentityKeyPair& key);

}  // namespace vanetauth
