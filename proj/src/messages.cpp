#include "vanetauth/messages.hpp"

#include <algorithm>

namespace vanetauth {

namespace {

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

  std::uint8_t u8() {
    need(1);
    return b_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | b_[pos_++];
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | b_[pos_++];
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = b_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename Id>
  Id id() {
    Id out;
    auto s = take(32);
    std::copy(s.begin(), s.end(), out.bytes.begin());
    return out;
  }
  void finish() const {
    if (pos_ != b_.size()) throw MalformedMessage("trailing bytes");
  }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw MalformedMessage("truncated payload");
  }
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

void append_u32(Bytes& out, std::uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void expect(const Message& m, MessageType t) {
  if (m.type != t) throw MalformedMessage(std::string("expected ") + label(t) + ", got " + label(m.type));
}

}  // namespace

const char* label(MessageType t) {
  switch (t) {
    case MessageType::Offer: return "D1";
    case MessageType::WitnessGraph: return "D2";
    case MessageType::Commit: return "Z1";
    case MessageType::Challenge: return "Z2";
    case MessageType::Response: return "Z3";
    case MessageType::SealedKey: return "E1";
    case MessageType::SealedTemporal: return "E2";
    case MessageType::SealedStore: return "E3";
    case MessageType::Abort: return "ABORT";
  }
  return "??";
}

char phase_letter(MessageType t) { return t == MessageType::Abort ? 'A' : label(t)[0]; }

Bytes encode_message(const Message& m) {
  Bytes out;
  out.reserve(5 + m.payload.size());
  out.push_back(static_cast<std::uint8_t>(m.type));
  append_u32(out, static_cast<std::uint32_t>(m.payload.size()));
  append_bytes(out, m.payload);
  return out;
}

Message decode_message(std::span<const std::uint8_t> wire) {
  Reader r(wire);
  std::uint8_t type = r.u8();
  if (type < 1 || type > 9) throw MalformedMessage("unknown message type");
  std::uint32_t len = r.u32();
  auto body = r.take(len);
  r.finish();
  return Message{static_cast<MessageType>(type), Bytes(body.begin(), body.end())};
}

Message offer_message(const DiscoveryOffer& offer) {
  Message m{MessageType::Offer, {}};
  append_bytes(m.payload, offer.sender.bytes);
  append_u32(m.payload, static_cast<std::uint32_t>(offer.id_hashes.size()));
  for (const auto& h : offer.id_hashes) append_bytes(m.payload, h);
  append_u64(m.payload, offer.nonce);
  return m;
}

DiscoveryOffer parse_offer(const Message& m) {
  expect(m, MessageType::Offer);
  Reader r(m.payload);
  DiscoveryOffer o;
  o.sender = r.id<Pseudonym>();
  std::uint32_t count = r.u32();
  if (count > (m.payload.size() / 32)) throw MalformedMessage("offer count too large");
  for (std::uint32_t i = 0; i < count; ++i) {
    Digest d;
    auto s = r.take(32);
    std::copy(s.begin(), s.end(), d.begin());
    o.id_hashes.push_back(d);
  }
  o.nonce = r.u64();
  r.finish();
  std::sort(o.id_hashes.begin(), o.id_hashes.end());
  return o;
}

Message graph_message(MessageType type, const EdgeSet& g) {
  Message m{type, {}};
  m.payload.push_back(static_cast<std::uint8_t>(g.vertex_count()));
  append_bytes(m.payload, g.pack());
  return m;
}

EdgeSet parse_graph(const Message& m) {
  if (m.type != MessageType::WitnessGraph && m.type != MessageType::Commit) {
    throw MalformedMessage("not a graph message");
  }
  Reader r(m.payload);
  int n = r.u8();
  if (n < 3 || n > kMaxEncodedVertices) throw MalformedMessage("graph vertex count out of range");
  auto packed = r.take(static_cast<std::size_t>((n * (n - 1) / 2 + 7) / 8));
  r.finish();
  return EdgeSet::unpack(n, packed);
}

Message challenge_message(bool challenge) {
  return Message{MessageType::Challenge, Bytes{static_cast<std::uint8_t>(challenge ? 1 : 0)}};
}

bool parse_challenge(const Message& m) {
  expect(m, MessageType::Challenge);
  if (m.payload.size() != 1 || m.payload[0] > 1) throw MalformedMessage("bad challenge");
  return m.payload[0] == 1;
}

Message response_message(const RoundResponse& resp) {
  Message m{MessageType::Response, {}};
  const std::vector<Vertex>& seq = std::holds_alternative<IsomorphismReveal>(resp)
                                       ? std::get<IsomorphismReveal>(resp).permutation
                                       : std::get<CycleReveal>(resp).cycle;
  m.payload.push_back(std::holds_alternative<CycleReveal>(resp) ? 1 : 0);
  m.payload.push_back(static_cast<std::uint8_t>(seq.size()));
  for (Vertex v : seq) m.payload.push_back(static_cast<std::uint8_t>(v));
  return m;
}

RoundResponse parse_response(const Message& m) {
  expect(m, MessageType::Response);
  Reader r(m.payload);
  std::uint8_t tag = r.u8();
  if (tag > 1) throw MalformedMessage("bad response tag");
  std::uint8_t count = r.u8();
  auto raw = r.take(count);
  r.finish();
  std::vector<Vertex> seq(raw.begin(), raw.end());
  if (tag == 0) return IsomorphismReveal{std::move(seq)};
  return CycleReveal{std::move(seq)};
}

Message blob_message(MessageType type, Bytes blob) { return Message{type, std::move(blob)}; }

Message integer_message(MessageType type, std::uint64_t v) {
  Message m{type, {}};
  append_u64(m.payload, v);
  return m;
}

std::uint64_t parse_integer(const Message& m) {
  Reader r(m.payload);
  std::uint64_t v = r.u64();
  r.finish();
  return v;
}

Message abort_message(std::uint8_t reason) { return Message{MessageType::Abort, Bytes{reason}}; }

Bytes encode_public_key(const PublicKey& k) { return k.to_bytes(); }

PublicKey decode_public_key(std::span<const std::uint8_t> b) {
  Reader r(b);
  PublicKey k;
  k.exponent = r.u64();
  k.modulus = r.u64();
  r.finish();
  return k;
}

Bytes encode_store(const KeyStore& store) {
  const CertificateGraph& g = store.graph();
  Bytes out;
  append_bytes(out, store.owner().bytes);
  append_u32(out, static_cast<std::uint32_t>(g.vertex_count()));
  for (const auto& [id, info] : g.vertices()) {
    append_bytes(out, id.bytes);
    append_bytes(out, info.key.to_bytes());
  }
  append_u32(out, static_cast<std::uint32_t>(g.edge_count()));
  for (const auto& [key, certs] : g.edges()) {
    append_bytes(out, key.first.bytes);
    append_bytes(out, key.second.bytes);
    for (const Certificate* c : {&certs.low_to_high, &certs.high_to_low}) {
      append_u64(out, c->signature);
      append_u64(out, static_cast<std::uint64_t>(c->issued_at));
      append_u64(out, static_cast<std::uint64_t>(c->expires_at));
    }
  }
  return out;
}

KeyStore decode_store(std::span<const std::uint8_t> b, std::size_t lim) {
  Reader r(b);
  NodeId owner = r.id<NodeId>();
  CertificateGraph g;
  std::uint32_t vertices = r.u32();
  if (vertices > b.size() / 48) throw MalformedMessage("vertex count too large");
  for (std::uint32_t i = 0; i < vertices; ++i) {
    NodeId id = r.id<NodeId>();
    PublicKey k;
    k.exponent = r.u64();
    k.modulus = r.u64();
    g.add_vertex(id, k);
  }
  std::uint32_t edges = r.u32();
  if (edges > b.size() / 112) throw MalformedMessage("edge count too large");
  for (std::uint32_t i = 0; i < edges; ++i) {
    NodeId lo = r.id<NodeId>();
    NodeId hi = r.id<NodeId>();
    if (!g.has_vertex(lo) || !g.has_vertex(hi)) throw MalformedMessage("edge references unknown node");
    Certificate ab{lo, hi, g.vertex(hi).key, r.u64(), 0, 0};
    ab.issued_at = static_cast<Timestamp>(r.u64());
    ab.expires_at = static_cast<Timestamp>(r.u64());
    Certificate ba{hi, lo, g.vertex(lo).key, r.u64(), 0, 0};
    ba.issued_at = static_cast<Timestamp>(r.u64());
    ba.expires_at = static_cast<Timestamp>(r.u64());
    try {
      g.add_edge(ab, ba);
    } catch (const std::exception& e) {
      throw MalformedMessage(std::string("store certificate rejected: ") + e.what());
    }
  }
  r.finish();
  try {
    return KeyStore(owner, std::move(g), std::max(lim, static_cast<std::size_t>(vertices)));
  } catch (const std::invalid_argument& e) {
    throw MalformedMessage(e.what());
  }
}

}  // namespace vanetauth
