#include "vanetauth/keys.hpp"

#include <array>

namespace vanetauth {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::optional<std::uint64_t> modinv(std::uint64_t a, std::uint64_t m) {
  if (m == 0) return std::nullopt;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(int bits, Rng& rng) {
  if (bits < 2 || bits > 32) throw std::invalid_argument("prime size must be 2..32 bits");
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  const std::uint64_t hi = (std::uint64_t{1} << bits) - 1;
  while (true) {
    std::uint64_t c = rng.between(lo, hi);
    if (is_prime(c)) return c;
  }
}

Bytes PublicKey::to_bytes() const {
  Bytes out;
  append_u64(out, exponent);
  append_u64(out, modulus);
  return out;
}

IdentityKeyPair generate_keypair(std::uint64_t p, std::uint64_t q, int n_vertices, Rng& rng,
                                 int max_attempts) {
  if (p == q || !is_prime(p) || !is_prime(q)) {
    throw std::invalid_argument("p and q must be distinct primes");
  }
  if (p > 0xffffffffULL || q > 0xffffffffULL) throw std::invalid_argument("primes must be below 2^32");
  if (n_vertices < 3 || n_vertices > kMaxEncodedVertices) {
    throw std::invalid_argument("cycle vertex count out of range");
  }
  const std::uint64_t phi = (p - 1) * (q - 1);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    EncodingValue e = encode_cycle(random_cycle(n_vertices, rng)).value;
    if (e >= phi) continue;
    auto e64 = static_cast<std::uint64_t>(e);
    if (gcd(e64, phi) != 1) continue;
    return IdentityKeyPair{p * q, e64, *modinv(e64, phi), n_vertices};
  }
  throw ExhaustedRetries("no Hamiltonian-cycle exponent below and coprime with phi after " +
                         std::to_string(max_attempts) + " attempts");
}

Cycle key_cycle(const IdentityKeyPair& key) {
  return decode_cycle(key.public_exponent, key.cycle_vertices);
}

std::uint64_t digest_to_residue(std::span<const std::uint8_t> message, std::uint64_t modulus) {
  Digest d = sha256(message);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | d[i];
  return v % modulus;
}

std::uint64_t sign(std::span<const std::uint8_t> message, const IdentityKeyPair& key) {
  return rsa_private(digest_to_residue(message, key.modulus), key);
}

bool verify(std::span<const std::uint8_t> message, std::uint64_t signature, const PublicKey& key) {
  if (key.modulus < 2 || signature >= key.modulus) return false;
  return rsa_public(signature, key) == digest_to_residue(message, key.modulus);
}

std::uint64_t rsa_public(std::uint64_t m, const PublicKey& key) {
  return powmod(m, key.exponent, key.modulus);
}

std::uint64_t rsa_private(std::uint64_t c, const IdentityKeyPair& key) {
  return powmod(c, key.private_exponent, key.modulus);
}

}  // namespace vanetauth
