#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vanetauth/certificate.hpp"

namespace vanetauth {

class UnknownNode : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VertexInfo {
  PublicKey key;
  std::optional<Pseudonym> pseudonym;  // last pseudonym seen for this node
  std::uint64_t secret_key = 0;        // temporal key shared with this node, 0 if none

  friend bool operator==(const VertexInfo&, const VertexInfo&) = default;
};

/// The two directed certificates behind one undirected edge {low, high}.
struct EdgeCerts {
  Certificate low_to_high;  // issued by the smaller NodeId
  Certificate high_to_low;

  const Certificate& issued_by(const NodeId& issuer) const {
    return issuer == low_to_high.issuer ? low_to_high : high_to_low;
  }
  friend bool operator==(const EdgeCerts&, const EdgeCerts&) = default;
};

using EdgeKey = std::pair<NodeId, NodeId>;  // first < second
EdgeKey edge_key(const NodeId& a, const NodeId& b);

/// Undirected certificate graph. An edge is present only when both directed
/// certificates are present and verify under their issuers' keys.
class CertificateGraph {
 public:
  /// Inserts a vertex; an existing vertex keeps its key, and metadata absent
  /// locally is filled from `info`.
  void add_vertex(const NodeId& id, const VertexInfo& info);
  void add_vertex(const NodeId& id, const PublicKey& key) { add_vertex(id, VertexInfo{key, {}, 0}); }

  /// Both endpoints must already be vertices. Throws std::invalid_argument if
  /// the certificates do not describe the pair or fail verification.
  void add_edge(const Certificate& a_to_b, const Certificate& b_to_a);
  /// Adds a pair already known to verify (e.g. copied from another valid graph).
  void add_verified_edge(const EdgeCerts& certs);

  void remove_edge(const NodeId& a, const NodeId& b);
  void remove_vertex(const NodeId& id);

  bool has_vertex(const NodeId& id) const { return vertices_.contains(id); }
  bool has_edge(const NodeId& a, const NodeId& b) const { return edges_.contains(edge_key(a, b)); }
  const VertexInfo& vertex(const NodeId& id) const;
  VertexInfo& vertex(const NodeId& id);
  const EdgeCerts* edge(const NodeId& a, const NodeId& b) const;
  /// Sorted neighbours; throws UnknownNode.
  const std::set<NodeId>& neighbors(const NodeId& id) const;
  std::size_t degree(const NodeId& id) const { return neighbors(id).size(); }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::map<NodeId, VertexInfo>& vertices() const { return vertices_; }
  const std::map<EdgeKey, EdgeCerts>& edges() const { return edges_; }
  std::vector<NodeId> ids() const;

  friend bool operator==(const CertificateGraph&, const CertificateGraph&) = default;

 private:
  std::map<NodeId, VertexInfo> vertices_;
  std::map<EdgeKey, EdgeCerts> edges_;
  std::map<NodeId, std::set<NodeId>> adjacency_;
};

std::size_t degree(const CertificateGraph& g, const NodeId& v);

/// Fewest-edge path from `from` to `to`, absent if disconnected. Ties are
/// resolved by visiting neighbours in NodeId order. Throws UnknownNode.
std::optional<std::vector<NodeId>> find_certificate_chain(const CertificateGraph& g,
                                                          const NodeId& from, const NodeId& to);

enum class ChainFailure { None, TooShort, UnknownNode, MissingCertificate, BadSignature, Expired };
const char* to_string(ChainFailure f);

struct ChainVerdict {
  bool ok = false;
  ChainFailure reason = ChainFailure::None;
  std::size_t failed_hop = 0;
  PublicKey endpoint_key;  // subject key of the last certificate when ok

  explicit operator bool() const { return ok; }
};

/// Walks the chain: hop 0 is checked with the first vertex's own key, every
/// later hop with the key certified by the previous hop.
ChainVerdict verify_chain(std::span<const NodeId> chain, const CertificateGraph& g, Timestamp now);

/// Drops edges with an expired certificate, then vertices left without any
/// certificate (except `keep`, typically a key-store owner).
CertificateGraph expire_unrenewed(const CertificateGraph& g, Timestamp now,
                                  const std::optional<NodeId>& keep = std::nullopt);

}  // namespace vanetauth
