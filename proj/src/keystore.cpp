#include "vanetauth/keystore.hpp"

#include <algorithm>
#include <set>

namespace vanetauth {

Identity make_identity(std::string_view seed, const IdentityKeyPair& keys) {
  return Identity{node_id(seed), keys};
}

KeyStore::KeyStore(NodeId owner, PublicKey owner_key, std::size_t limit)
    : owner_(owner), limit_(limit) {
  if (limit == 0) throw std::invalid_argument("key store limit must be positive");
  graph_.add_vertex(owner, owner_key);
}

KeyStore::KeyStore(NodeId owner, CertificateGraph graph, std::size_t limit)
    : owner_(owner), graph_(std::move(graph)), limit_(limit) {
  if (limit == 0) throw std::invalid_argument("key store limit must be positive");
  if (!graph_.has_vertex(owner)) throw std::invalid_argument("key store graph lacks its owner");
  if (graph_.vertex_count() > limit) throw std::invalid_argument("key store exceeds its limit");
}

Pseudonym pseudonym(const KeyStore& store) { return store.pseudonym(); }

CertificateGraph merge_graphs(const CertificateGraph& a, const CertificateGraph& b) {
  CertificateGraph out = a;
  for (const auto& [id, info] : b.vertices()) out.add_vertex(id, info);
  for (const auto& [key, certs] : b.edges()) {
    const EdgeCerts* existing = out.edge(key.first, key.second);
    if (existing == nullptr) {
      out.add_verified_edge(certs);
      continue;
    }
    EdgeCerts merged = *existing;
    if (certs.low_to_high.issued_at > merged.low_to_high.issued_at) merged.low_to_high = certs.low_to_high;
    if (certs.high_to_low.issued_at > merged.high_to_low.issued_at) merged.high_to_low = certs.high_to_low;
    out.add_verified_edge(merged);
  }
  return out;
}

CertificateGraph merge_stores(const KeyStore& a, const KeyStore& b) {
  return merge_graphs(a.graph(), b.graph());
}

KeyStore select_keystore(const NodeId& owner, const CertificateGraph& pool, std::size_t lim) {
  if (lim == 0) throw std::invalid_argument("key store limit must be positive");
  CertificateGraph chosen;
  chosen.add_vertex(owner, pool.vertex(owner));
  std::vector<NodeId> members{owner};

  for (std::size_t i = 0; i < members.size() && members.size() < lim; ++i) {
    const NodeId member = members[i];
    std::vector<NodeId> candidates;
    for (const auto& n : pool.neighbors(member)) {
      if (!chosen.has_vertex(n)) candidates.push_back(n);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](const NodeId& x, const NodeId& y) {
      return pool.degree(x) > pool.degree(y);
    });
    for (const auto& j : candidates) {
      if (members.size() >= lim) break;
      chosen.add_vertex(j, pool.vertex(j));
      chosen.add_verified_edge(*pool.edge(member, j));
      members.push_back(j);
    }
  }
  return KeyStore(owner, std::move(chosen), lim);
}

KeyStore update_keystore(const KeyStore& own, const KeyStore& other, std::size_t lim) {
  return select_keystore(own.owner(), merge_stores(own, other), lim);
}

std::vector<Certificate> admit_node(const NodeId& newcomer, const PublicKey& newcomer_key,
                                    std::span<const Identity> sponsors, std::size_t threshold,
                                    Timestamp now, Timestamp lifetime) {
  if (threshold < 2) throw std::invalid_argument("admission threshold must be at least 2");
  std::set<NodeId> distinct;
  for (const auto& s : sponsors) {
    if (s.id != newcomer) distinct.insert(s.id);
  }
  if (distinct.size() < threshold) {
    throw InsufficientSponsors("admission needs " + std::to_string(threshold) + " sponsors, got " +
                               std::to_string(distinct.size()));
  }
  std::vector<Certificate> certs;
  std::set<NodeId> signed_by;
  for (const auto& s : sponsors) {
    if (s.id == newcomer || !signed_by.insert(s.id).second) continue;
    certs.push_back(issue_certificate(s.id, s.keys, newcomer, newcomer_key, now, lifetime));
  }
  return certs;
}

std::vector<Certificate> admit_into(CertificateGraph& g, const Identity& newcomer,
                                    std::span<const Identity> sponsors, std::size_t threshold,
                                    Timestamp now, Timestamp lifetime) {
  for (const auto& s : sponsors) {
    if (!g.has_vertex(s.id)) throw UnknownNode("sponsor is not a graph member");
  }
  auto certs = admit_node(newcomer.id, newcomer.public_key(), sponsors, threshold, now, lifetime);
  std::size_t valid = 0;
  for (const auto& c : certs) {
    if (signature_valid(c, g.vertex(c.issuer).key)) ++valid;
  }
  if (valid < threshold) throw InsufficientSponsors("too few sponsor signatures verify");
  g.add_vertex(newcomer.id, newcomer.public_key());
  for (const auto& c : certs) {
    Certificate back = issue_certificate(newcomer.id, newcomer.keys, c.issuer,
                                         g.vertex(c.issuer).key, now, lifetime);
    g.add_edge(c, back);
  }
  return certs;
}

}  // namespace vanetauth

namespace vanetauth {

Node make_node(const Identity& identity, std::size_t lim) {
  return Node{identity, KeyStore(identity.id, identity.public_key(), lim)};
}

}  // namespace vanetauth
