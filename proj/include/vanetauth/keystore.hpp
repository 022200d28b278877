#pragma once

#include <cstddef>
#include <vector>

#include "vanetauth/graph.hpp"

namespace vanetauth {

/// A node's identity: its ID and identity key pair.
struct Identity {
  NodeId id;
  IdentityKeyPair keys;

  PublicKey public_key() const { return keys.public_key(); }
};

Identity make_identity(std::string_view seed, const IdentityKeyPair& keys);

/// Bounded local subgraph of the certificate graph. `limit` bounds the total
/// number of vertices, owner included.
class KeyStore {
 public:
  KeyStore(NodeId owner, PublicKey owner_key, std::size_t limit);
  KeyStore(NodeId owner, CertificateGraph graph, std::size_t limit);

  const NodeId& owner() const { return owner_; }
  const CertificateGraph& graph() const { return graph_; }
  CertificateGraph& graph() { return graph_; }
  std::size_t limit() const { return limit_; }
  std::size_t size() const { return graph_.vertex_count(); }
  bool contains(const NodeId& id) const { return graph_.has_vertex(id); }
  std::vector<NodeId> ids() const { return graph_.ids(); }
  Pseudonym pseudonym() const { return pseudonym_of(ids()); }

  friend bool operator==(const KeyStore&, const KeyStore&) = default;

 private:
  NodeId owner_;
  CertificateGraph graph_;
  std::size_t limit_;
};

Pseudonym pseudonym(const KeyStore& store);

/// Union of both stores; a certificate present in both is kept in its most
/// recently issued version.
CertificateGraph merge_stores(const KeyStore& a, const KeyStore& b);
CertificateGraph merge_graphs(const CertificateGraph& a, const CertificateGraph& b);

/// Rebuilds `own` from the union of both stores. Starting from the owner,
/// members are scanned in admission order; each member admits its
/// not-yet-admitted union neighbours highest union-degree first (ties by
/// NodeId) together with the connecting edge, while the store holds fewer
/// than `lim` vertices.
KeyStore update_keystore(const KeyStore& own, const KeyStore& other, std::size_t lim);
/// Same selection applied to an arbitrary graph, rooted at `owner`.
KeyStore select_keystore(const NodeId& owner, const CertificateGraph& pool, std::size_t lim);

class InsufficientSponsors : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultAdmissionThreshold = 2;

/// Sponsor-signed certificates for a newcomer. Throws InsufficientSponsors
/// when fewer than `threshold` sponsors are available; threshold must be >= 2.
std::vector<Certificate> admit_node(const NodeId& newcomer, const PublicKey& newcomer_key,
                                    std::span<const Identity> sponsors, std::size_t threshold,
                                    Timestamp now,
                                    Timestamp lifetime = kDefaultCertificateLifetime);

/// Admission into a graph: sponsors must be vertices; the newcomer and each
/// sponsor certify each other and the edges are inserted.
std::vector<Certificate> admit_into(CertificateGraph& g, const Identity& newcomer,
                                    std::span<const Identity> sponsors, std::size_t threshold,
                                    Timestamp now,
                                    Timestamp lifetime = kDefaultCertificateLifetime);

}  // namespace vanetauth

namespace vanetauth {

/// Everything a node carries: identity keys plus its key store.
struct Node {
  Identity identity;
  KeyStore store;

  const NodeId& id() const { return identity.id; }
};

/// Node with a store holding only itself.
Node make_node(const Identity& identity, std::size_t lim);

}  // namespace vanetauth
