#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <map>

#include "support.hpp"
#include "vanetauth/beacon.hpp"
#include "vanetauth/messages.hpp"

using namespace vanetauth;
using namespace vanetauth::testing;

namespace {

int phase_rank(Phase p) {
  switch (p) {
    case Phase::Discovery: return 0;
    case Phase::AwaitGraph: return 1;
    case Phase::ProofVerify:
    case Phase::ProofProve: return 2;
    case Phase::Exchange: return 3;
    case Phase::Established:
    case Phase::Failed: return 4;
  }
  return -1;
}

bool monotone(const std::vector<Phase>& history) {
  for (std::size_t i = 1; i < history.size(); ++i) {
    if (phase_rank(history[i]) < phase_rank(history[i - 1])) return false;
    if (phase_rank(history[i - 1]) == 4 && history[i] != history[i - 1]) return false;
  }
  return true;
}

bool contains(const Bytes& hay, std::span<const std::uint8_t> needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

/// Two sessions over a queue whose deliveries can be rewritten by `tamper`.
struct Link {
  AuthSession a;
  AuthSession b;
  std::deque<std::pair<char, Message>> queue;

  Link(const Node& na, const Node& nb, SessionParams p, std::uint64_t seed)
      : a(na, p, Rng::derive(seed, 1), 0), b(nb, p, Rng::derive(seed, 2), 0) {
    for (auto& m : a.start()) queue.emplace_back('B', m);
    for (auto& m : b.start()) queue.emplace_back('A', m);
  }

  template <typename Tamper>
  void run(Tamper tamper, int limit = 10000) {
    while (!queue.empty() && limit-- > 0) {
      auto [to, m] = queue.front();
      queue.pop_front();
      if (!tamper(to, m)) continue;
      AuthSession& s = to == 'A' ? a : b;
      for (auto& out : s.advance(m, 0)) queue.emplace_back(to == 'A' ? 'B' : 'A', out);
    }
  }
};

}  // namespace

TEST(MessagesCodec, RoundTrips) {
  auto ids = sorted_identities(3, "msg");
  KeyStore store(ids[0].id, graph_of(ids, {{0, 1}, {1, 2}}, {0}), 16);
  DiscoveryOffer offer = make_offer(store, 42);
  EXPECT_EQ(parse_offer(decode_message(encode_message(offer_message(offer)))), offer);

  EdgeSet g(9);
  g.add(0, 8), g.add(3, 4);
  EXPECT_EQ(parse_graph(decode_message(encode_message(graph_message(MessageType::Commit, g)))), g);
  EXPECT_TRUE(parse_challenge(decode_message(encode_message(challenge_message(true)))));
  RoundResponse r = CycleReveal{{0, 3, 1, 2}};
  auto back = parse_response(decode_message(encode_message(response_message(r))));
  EXPECT_EQ(std::get<CycleReveal>(back).cycle, (Cycle{0, 3, 1, 2}));
  EXPECT_EQ(parse_integer(integer_message(MessageType::SealedTemporal, 0xabcdef)), 0xabcdefu);
  EXPECT_EQ(decode_public_key(encode_public_key(ids[1].public_key())), ids[1].public_key());

  KeyStore decoded = decode_store(encode_store(store), 16);
  EXPECT_EQ(decoded.owner(), store.owner());
  EXPECT_EQ(decoded.graph().edges(), store.graph().edges());
  EXPECT_EQ(decode_store(encode_store(store), 2).size(), store.size());
}

TEST(MessagesCodec, RejectsMalformedFrames) {
  Bytes wire = encode_message(challenge_message(false));
  EXPECT_THROW(decode_message(std::span(wire).first(wire.size() - 1)), MalformedMessage);
  Bytes longer = wire;
  longer.push_back(0);
  EXPECT_THROW(decode_message(longer), MalformedMessage);
  Bytes unknown = wire;
  unknown[0] = 0x7f;
  EXPECT_THROW(decode_message(unknown), MalformedMessage);
  EXPECT_THROW(decode_message(Bytes{}), MalformedMessage);
  Message bad{MessageType::Response, Bytes{0, 3, 0, 0}};
  EXPECT_THROW(parse_response(bad), MalformedMessage);
}

TEST(Beacons, WireFormatAndLinking) {
  auto pair = shared_pair();
  Beacon b = make_beacon(pair.a, "10.0.0.1", 1000);
  std::string wire = encode_beacon(b);
  EXPECT_EQ(wire.rfind("01,10.0.0.1,", 0), 0u);
  EXPECT_EQ(std::count(wire.begin(), wire.end(), ','), 3);
  EXPECT_EQ(decode_beacon(wire), b);
  EXPECT_EQ(b.pseudonym, pair.a.store.pseudonym());
  EXPECT_TRUE(beacon_links_to(b, pair.a.id(), pair.a.identity.public_key()));
  EXPECT_FALSE(beacon_links_to(b, pair.b.id(), pair.b.identity.public_key()));

  Node grown = pair.a;
  grown.store = update_keystore(pair.a.store, pair.b.store, 16);
  Beacon fresh = refresh_pseudonym(grown, "10.0.0.1", 2000);
  EXPECT_NE(fresh.pseudonym, b.pseudonym);
  EXPECT_TRUE(beacon_links_to(fresh, pair.a.id(), pair.a.identity.public_key()));

  EXPECT_THROW(decode_beacon("01,addr,00"), MalformedBeacon);
  EXPECT_THROW(decode_beacon("02" + wire.substr(2)), MalformedBeacon);
  EXPECT_THROW(decode_beacon(wire.substr(0, wire.size() - 2)), MalformedBeacon);
}

TEST(Discovery, MatchAndCommonKey) {
  auto pair = shared_pair();
  DiscoveryOffer offer = make_offer(pair.a.store);
  auto matches = discovery_match(offer, pair.b.store);
  ASSERT_EQ(matches, std::vector<NodeId>{pair.x.id});
  EXPECT_EQ(select_common_key(matches, pair.b.store), pair.x.public_key().exponent);
  auto [c, d] = disjoint_pair();
  EXPECT_TRUE(discovery_match(make_offer(c.store), d.store).empty());
}

TEST(HandshakeTest, SharedIdEstablishesBothWays) {
  auto pair = shared_pair();
  SessionParams p;
  p.rounds = 8;
  Handshake h(pair.a, pair.b, p, 5, 100);
  h.run();
  ASSERT_TRUE(h.mutually_established()) << to_string(h.a().failure()) << "/" << to_string(h.b().failure());
  EXPECT_NE(*h.a().is_initiator(), *h.b().is_initiator());
  EXPECT_EQ(h.a().peer().id, pair.b.id());
  EXPECT_EQ(h.b().peer().id, pair.a.id());
  EXPECT_EQ(h.a().peer().key, pair.b.identity.public_key());
  EXPECT_EQ(h.a().peer().session_key, h.b().peer().session_key);
  EXPECT_EQ(h.a().peer().own_temporal, h.b().peer().peer_temporal);
  EXPECT_EQ(h.a().updated_store().size(), 3u);
  EXPECT_TRUE(h.a().updated_store().contains(pair.b.id()));

  Bytes msg{'s', 'l', 'o', 'w'};
  EXPECT_EQ(h.b().open_from_peer(h.a().seal_for_peer(msg)), msg);
  EXPECT_EQ(h.a().open_from_peer(h.b().seal_for_peer(msg)), msg);

  std::map<std::string, int> count;
  for (const auto& r : h.log()) ++count[label(r.type)];
  EXPECT_EQ(count["D1"], 2);
  EXPECT_EQ(count["D2"], 2);
  EXPECT_EQ(count["Z1"], 16);
  EXPECT_EQ(count["Z2"], 16);
  EXPECT_EQ(count["Z3"], 16);
  EXPECT_EQ(count["E1"], 2);
  EXPECT_EQ(count["E2"], 2);
  EXPECT_EQ(count["E3"], 2);
  EXPECT_TRUE(monotone(h.a().phase_history()));
  EXPECT_TRUE(monotone(h.b().phase_history()));
}

TEST(HandshakeTest, TranscriptCarriesNoSecrets) {
  auto pair = shared_pair();
  Handshake h(pair.a, pair.b, SessionParams{}, 9, 100);
  h.run();
  ASSERT_TRUE(h.mutually_established());
  Bytes wire = h.transcript_bytes();
  for (std::uint64_t secret : {pair.a.identity.keys.private_exponent, pair.b.identity.keys.private_exponent,
                               *h.a().common_key(), h.a().peer().own_temporal, h.b().peer().own_temporal}) {
    EXPECT_FALSE(contains(wire, be_bytes(secret))) << secret;
  }
  EXPECT_FALSE(contains(wire, h.a().peer().session_key.bytes));
}

TEST(HandshakeTest, DisjointStoresFailWithoutCommonKey) {
  auto [a, b] = disjoint_pair();
  Handshake h(a, b, SessionParams{}, 1, 100);
  h.run();
  EXPECT_FALSE(h.mutually_established());
  EXPECT_EQ(h.a().failure(), Failure::NoCommonKey);
  EXPECT_EQ(h.b().failure(), Failure::NoCommonKey);
  EXPECT_EQ(h.log().size(), 2u);
}

TEST(HandshakeTest, ExpiredCertificatesGiveNoChain) {
  auto pair = shared_pair();
  Handshake h(pair.a, pair.b, SessionParams{}, 2, kDefaultCertificateLifetime + 1);
  h.run();
  EXPECT_FALSE(h.mutually_established());
  EXPECT_TRUE(h.a().failure() == Failure::NoChain || h.b().failure() == Failure::NoChain);
}

TEST(HandshakeTest, SameSeedSameTranscript) {
  auto pair = shared_pair();
  Handshake h1(pair.a, pair.b, SessionParams{}, 3, 100), h2(pair.a, pair.b, SessionParams{}, 3, 100);
  h1.run();
  h2.run();
  EXPECT_EQ(h1.transcript_lines(), h2.transcript_lines());
  Handshake h3(pair.a, pair.b, SessionParams{}, 4, 100);
  h3.run();
  EXPECT_NE(h1.transcript_bytes(), h3.transcript_bytes());
}

TEST(Sessions, OutOfOrderAndAborts) {
  auto pair = shared_pair();
  AuthSession early(pair.a, SessionParams{}, Rng(1), 0);
  early.advance(challenge_message(true), 0);
  EXPECT_EQ(early.failure(), Failure::PhaseViolation);

  AuthSession s(pair.a, SessionParams{}, Rng(1), 0);
  s.start();
  s.advance(challenge_message(true), 0);
  EXPECT_EQ(s.failure(), Failure::PhaseViolation);

  AuthSession t(pair.a, SessionParams{}, Rng(1), 0);
  t.start();
  EXPECT_TRUE(t.advance(abort_message(1), 0).empty());
  EXPECT_EQ(t.failure(), Failure::PeerAbort);

  AuthSession idle(pair.a, SessionParams{}, Rng(1), 0);
  idle.start();
  EXPECT_FALSE(idle.check_timeout(5));
  EXPECT_TRUE(idle.check_timeout(11));
  EXPECT_EQ(idle.failure(), Failure::Timeout);
}

TEST(Sessions, ForeignWitnessGraphRejected) {
  auto pair = shared_pair();
  Link link(pair.a, pair.b, SessionParams{}, 7);
  link.run([](char, Message& m) {
    if (m.type == MessageType::WitnessGraph) m = graph_message(MessageType::WitnessGraph, EdgeSet(12));
    return true;
  });
  EXPECT_TRUE(link.a.failure() == Failure::BadWitnessGraph || link.b.failure() == Failure::BadWitnessGraph);
  EXPECT_FALSE(link.a.established() || link.b.established());
}

TEST(Sessions, ForgedCycleRevealRejected) {
  auto pair = shared_pair();
  Link link(pair.a, pair.b, SessionParams{}, 8);
  link.run([](char, Message& m) {
    if (m.type == MessageType::Response) {
      RoundResponse r = parse_response(m);
      if (auto* c = std::get_if<CycleReveal>(&r)) {
        std::swap(c->cycle[1], c->cycle[5]);
        m = response_message(r);
      }
    }
    return true;
  });
  EXPECT_FALSE(link.a.established() && link.b.established());
  EXPECT_TRUE(link.a.failure() == Failure::ProofRejected || link.b.failure() == Failure::ProofRejected);
}

TEST(Sessions, TamperedExchangeDetected) {
  auto pair = shared_pair();
  Link link(pair.a, pair.b, SessionParams{}, 9);
  link.run([](char, Message& m) {
    if (m.type == MessageType::SealedStore) m.payload[m.payload.size() / 2] ^= 1;
    return true;
  });
  EXPECT_FALSE(link.a.established() || link.b.established());
}

TEST(Sessions, FuzzedTransportKeepsPhasesMonotone) {
  auto pair = shared_pair();
  SessionParams p;
  p.rounds = 4;
  Rng fuzz(2024);
  int established = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Link link(pair.a, pair.b, p, 1000 + trial);
    const double rate = fuzz.unit() * 0.2;
    link.run([&](char to, Message& m) {
      if (!fuzz.chance(rate)) return true;
      switch (fuzz.below(4)) {
        case 0: return false;  // drop
        case 1:
          if (!m.payload.empty()) m.payload[fuzz.below(m.payload.size())] ^= static_cast<std::uint8_t>(1 + fuzz.below(255));
          return true;
        case 2: link.queue.emplace_back(to, m); return true;  // duplicate later
        default: m.type = static_cast<MessageType>(1 + fuzz.below(9)); return true;
      }
    });
    ASSERT_TRUE(monotone(link.a.phase_history()));
    ASSERT_TRUE(monotone(link.b.phase_history()));
    if (link.a.established() && link.b.established()) {
      ++established;
      EXPECT_EQ(link.a.peer().session_key, link.b.peer().session_key);
      EXPECT_EQ(link.a.peer().id, pair.b.id());
    }
  }
  EXPECT_GT(established, 0);
}
