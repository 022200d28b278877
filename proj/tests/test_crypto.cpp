#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "vanetauth/envelope.hpp"
#include "vanetauth/hamiltonian.hpp"
#include "vanetauth/keys.hpp"
#include "vanetauth/rng.hpp"

using namespace vanetauth;

namespace {

// Independent encoder: walks the pair list in row-major order and sets the
// bit of every pair adjacent on the cycle.
EncodingValue oracle_encode(const std::vector<int>& cycle) {
  const int n = static_cast<int>(cycle.size());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    int u = cycle[i], v = cycle[(i + 1) % n];
    adj[u][v] = adj[v][u] = true;
  }
  EncodingValue value = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) value = (value << 1) | (adj[u][v] ? 1 : 0);
  }
  return value;
}

struct Euclid {
  std::int64_t g, x, y;
};

Euclid extended_euclid(std::int64_t a, std::int64_t b) {
  if (b == 0) return {a, 1, 0};
  Euclid r = extended_euclid(b, a % b);
  return {r.g, r.y, r.x - (a / b) * r.y};
}

std::uint64_t naive_powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (std::uint64_t i = 0; i < e; ++i) r = r * b % m;
  return r;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST(CycleEncoding, TriangleIsSeven) {
  EXPECT_EQ(encode_cycle(std::vector<int>{0, 1, 2}).value, 7u);
  EXPECT_EQ(decode_cycle(7, 3), (Cycle{0, 1, 2}));
}

TEST(CycleEncoding, FourVertexCyclesMatchOracle) {
  std::set<unsigned> values;
  for (const Cycle& c : {Cycle{0, 1, 2, 3}, Cycle{0, 1, 3, 2}, Cycle{0, 2, 1, 3}}) {
    EncodingValue v = encode_cycle(c).value;
    EXPECT_EQ(v, oracle_encode(c));
    values.insert(static_cast<unsigned>(v));
  }
  EXPECT_EQ(values, (std::set<unsigned>{30, 45, 51}));
  EXPECT_EQ(decode_cycle(45, 4), (Cycle{0, 1, 2, 3}));
  EXPECT_EQ(decode_cycle(30, 4), (Cycle{0, 2, 1, 3}));
}

TEST(CycleEncoding, RejectsNonCycles) {
  EXPECT_THROW(decode_cycle(46, 4), NotACycle);  // vertex 1 has degree 3
  EXPECT_THROW(decode_cycle(0, 5), NotACycle);
  // two disjoint triangles on six vertices
  EdgeSet two(6);
  two.add(0, 1), two.add(1, 2), two.add(0, 2), two.add(3, 4), two.add(4, 5), two.add(3, 5);
  EncodingValue v = 0;
  for (int u = 0; u < 6; ++u)
    for (int w = u + 1; w < 6; ++w) v = (v << 1) | (two.has(u, w) ? 1 : 0);
  EXPECT_THROW(decode_cycle(v, 6), NotACycle);
  EXPECT_THROW(encode_cycle(std::vector<int>{0, 1}), std::invalid_argument);
  EXPECT_THROW(encode_cycle(std::vector<int>{0, 1, 1}), std::invalid_argument);
}

TEST(CycleEncoding, WidthAndPairIndex) {
  EXPECT_EQ(encoding_width(3), 3);
  EXPECT_EQ(encoding_width(12), 66);
  EXPECT_EQ(pair_index(4, 0, 1), 0);
  EXPECT_EQ(pair_index(4, 2, 3), 5);
  EXPECT_EQ(pair_index(4, 3, 1), pair_index(4, 1, 3));
}

TEST(CycleEncoding, RandomCyclesRoundTripToCanonicalForm) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 3 + static_cast<int>(rng.below(kMaxEncodedVertices - 2));
    Cycle c = random_cycle(n, rng);
    EncodingValue v = encode_cycle(c).value;
    EXPECT_EQ(v, oracle_encode(c));
    Cycle d = decode_cycle(v, n);
    EXPECT_EQ(d.front(), 0);
    EXPECT_LT(d[1], d.back());
    EXPECT_EQ(d, canonical_cycle(c));
    EXPECT_EQ(encode_cycle(d).value, v);
  }
}

TEST(CycleEncoding, DecimalTextRoundTrip) {
  EncodingValue big = (EncodingValue{1} << 119) | 12345;
  EXPECT_EQ(parse_encoding(to_string(big)), big);
  EXPECT_EQ(to_string(EncodingValue{0}), "0");
  EXPECT_THROW(parse_encoding("12a"), std::invalid_argument);
}

TEST(EdgeSetTest, PackAndPermute) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + static_cast<int>(rng.below(20));
    EdgeSet g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bit()) g.add(u, v);
    EXPECT_EQ(EdgeSet::unpack(n, g.pack()), g);
    Permutation p = random_permutation(n, rng);
    EdgeSet h = g.permuted(p);
    EXPECT_EQ(h.edge_count(), g.edge_count());
    EXPECT_EQ(h.degree_sequence(), g.degree_sequence());
    EXPECT_EQ(h.permuted(invert(p)), g);
  }
}

TEST(Arithmetic, ModinvMatchesExtendedEuclid) {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t m = 2 + static_cast<std::int64_t>(rng.below(1'000'000));
    std::int64_t a = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m)));
    Euclid e = extended_euclid(a, m);
    auto inv = modinv(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(m));
    if (e.g != 1) {
      EXPECT_FALSE(inv.has_value()) << a << " mod " << m;
    } else {
      ASSERT_TRUE(inv.has_value());
      EXPECT_EQ(static_cast<std::int64_t>(*inv), ((e.x % m) + m) % m);
    }
  }
}

TEST(Arithmetic, PowmodAndMulmod) {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t m = 2 + rng.below(5000);
    std::uint64_t b = rng.below(m), e = rng.below(3000);
    EXPECT_EQ(powmod(b, e, m), naive_powmod(b, e, m));
  }
  const std::uint64_t big = 0xFFFFFFFFFFFFFFC5ull;  // largest 64-bit prime
  EXPECT_EQ(mulmod(big - 1, big - 1, big), 1u);
}

TEST(Arithmetic, MillerRabinMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 50000; ++n) ASSERT_EQ(is_prime(n), trial_division_prime(n)) << n;
  EXPECT_TRUE(is_prime(4294967291ull));
  EXPECT_FALSE(is_prime(4294967297ull));  // 641 * 6700417
  for (std::uint64_t carmichael : {561ull, 1105ull, 1729ull, 2465ull, 3215031751ull}) {
    EXPECT_FALSE(is_prime(carmichael));
  }
}

TEST(Arithmetic, RandomPrimeHasRequestedSize) {
  Rng rng(8);
  for (int bits = 2; bits <= 32; ++bits) {
    std::uint64_t p = random_prime(bits, rng);
    EXPECT_TRUE(trial_division_prime(p));
    EXPECT_EQ(64 - __builtin_clzll(p), bits);
  }
}

TEST(Keys, WorkedExampleFiveEleven) {
  Rng rng(1);
  IdentityKeyPair k = generate_keypair(5, 11, 3, rng);
  EXPECT_EQ(k.modulus, 55u);
  EXPECT_EQ(k.public_exponent, 7u);
  EXPECT_EQ(k.private_exponent, 23u);
  EXPECT_EQ(key_cycle(k), (Cycle{0, 1, 2}));
  Euclid e = extended_euclid(7, 40);
  EXPECT_EQ(static_cast<std::int64_t>(k.private_exponent), ((e.x % 40) + 40) % 40);
}

TEST(Keys, WorkedExampleThreeEleven) {
  Rng rng(2);
  IdentityKeyPair k = generate_keypair(3, 11, 3, rng);
  EXPECT_EQ(k.modulus, 33u);
  EXPECT_EQ(k.public_exponent, 7u);
  EXPECT_EQ(k.private_exponent, 3u);
}

TEST(Keys, RawSignatureOfTwo) {
  IdentityKeyPair k{55, 7, 23, 3};
  EXPECT_EQ(rsa_private(2, k), naive_powmod(2, 23, 55));
  EXPECT_EQ(rsa_private(2, k), 8u);
  EXPECT_EQ(rsa_public(8, k.public_key()), 2u);
}

TEST(Keys, NoCycleFitsBelowPhi) {
  Rng rng(1);
  // phi = 8, and every 4-vertex encoding (30, 45, 51) exceeds it
  EXPECT_THROW(generate_keypair(3, 5, 4, rng), ExhaustedRetries);
  EXPECT_THROW(generate_keypair(4, 11, 3, rng), std::invalid_argument);
}

TEST(Keys, SameSeedSameKey) {
  Rng a(99), b(99);
  EXPECT_EQ(generate_keypair(65521, 65519, 7, a), generate_keypair(65521, 65519, 7, b));
}

TEST(Keys, SignVerify) {
  Rng rng(4);
  IdentityKeyPair k = generate_keypair(random_prime(16, rng), random_prime(15, rng), 7, rng);
  Bytes msg{1, 2, 3, 4};
  std::uint64_t s = sign(msg, k);
  EXPECT_TRUE(verify(msg, s, k.public_key()));
  msg[0] ^= 1;
  EXPECT_FALSE(verify(msg, s, k.public_key()));
  EXPECT_FALSE(verify(Bytes{1, 2, 3, 4}, s + k.modulus, k.public_key()));
}

TEST(Envelope, SealOpenAndTamper) {
  Rng rng(10);
  SymmetricKey key = derive_key(0x1234);
  Bytes pt{'h', 'e', 'l', 'l', 'o'};
  Bytes env = seal(key, pt, rng);
  EXPECT_EQ(env.size(), pt.size() + kNonceSize + kTagSize);
  EXPECT_EQ(open(key, env), pt);
  for (std::size_t i = 0; i < env.size(); ++i) {
    Bytes bad = env;
    bad[i] ^= 0x40;
    EXPECT_THROW(open(key, bad), AuthFailure);
  }
  EXPECT_THROW(open(derive_key(0x1235), env), AuthFailure);
  EXPECT_THROW(open(key, Bytes(5, 0)), AuthFailure);
}

TEST(Hashing, KnownVectorAndHex) {
  EXPECT_EQ(to_hex(sha256("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  Bytes raw{0x00, 0xff, 0x10};
  EXPECT_EQ(from_hex(to_hex(raw)), raw);
  EXPECT_THROW(from_hex("abc"), std::invalid_argument);
  EXPECT_THROW(from_hex("zz"), std::invalid_argument);
  NodeId a = node_id("a"), b = node_id("b");
  EXPECT_EQ(pseudonym_of({a, b}), pseudonym_of({b, a}));
  EXPECT_NE(pseudonym_of({a}), pseudonym_of({a, b}));
  EXPECT_EQ(NodeId::from_hex_string(a.hex()), a);
}

TEST(RngTest, DeterministicAndBounded) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c = Rng::derive(1, 1), d = Rng::derive(1, 2);
  EXPECT_NE(c.next(), d.next());
  Rng r(7);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 6000; ++i) {
    auto v = r.below(6);
    ASSERT_LT(v, 6u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 850);
  for (int i = 0; i < 1000; ++i) {
    double u = r.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
