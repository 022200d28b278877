#include "vanetauth/graph.hpp"

#include <deque>

namespace vanetauth {

EdgeKey edge_key(const NodeId& a, const NodeId& b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

void CertificateGraph::add_vertex(const NodeId& id, const VertexInfo& info) {
  auto [it, inserted] = vertices_.try_emplace(id, info);
  adjacency_.try_emplace(id);
  if (!inserted) {
    if (!it->second.pseudonym) it->second.pseudonym = info.pseudonym;
    if (it->second.secret_key == 0) it->second.secret_key = info.secret_key;
  }
}

void CertificateGraph::add_edge(const Certificate& a_to_b, const Certificate& b_to_a) {
  const NodeId& a = a_to_b.issuer;
  const NodeId& b = a_to_b.subject;
  if (a == b) throw std::invalid_argument("self-certification cannot form an edge");
  if (b_to_a.issuer != b || b_to_a.subject != a) {
    throw std::invalid_argument("certificates do not describe the same pair");
  }
  if (!has_vertex(a) || !has_vertex(b)) throw UnknownNode("edge endpoint is not a vertex");
  const PublicKey& ka = vertices_.at(a).key;
  const PublicKey& kb = vertices_.at(b).key;
  if (a_to_b.subject_key != kb || b_to_a.subject_key != ka) {
    throw std::invalid_argument("certificate binds a different key than the vertex holds");
  }
  if (!signature_valid(a_to_b, ka) || !signature_valid(b_to_a, kb)) {
    throw std::invalid_argument("certificate signature does not verify");
  }
  add_verified_edge(a < b ? EdgeCerts{a_to_b, b_to_a} : EdgeCerts{b_to_a, a_to_b});
}

void CertificateGraph::add_verified_edge(const EdgeCerts& certs) {
  const NodeId& lo = certs.low_to_high.issuer;
  const NodeId& hi = certs.high_to_low.issuer;
  edges_[EdgeKey{lo, hi}] = certs;
  adjacency_[lo].insert(hi);
  adjacency_[hi].insert(lo);
}

void CertificateGraph::remove_edge(const NodeId& a, const NodeId& b) {
  if (edges_.erase(edge_key(a, b)) == 0) return;
  adjacency_[a].erase(b);
  adjacency_[b].erase(a);
}

void CertificateGraph::remove_vertex(const NodeId& id) {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) return;
  for (const auto& n : std::set<NodeId>(it->second)) remove_edge(id, n);
  adjacency_.erase(id);
  vertices_.erase(id);
}

const VertexInfo& CertificateGraph::vertex(const NodeId& id) const {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) throw UnknownNode("unknown node " + id.short_hex());
  return it->second;
}

VertexInfo& CertificateGraph::vertex(const NodeId& id) {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) throw UnknownNode("unknown node " + id.short_hex());
  return it->second;
}

const EdgeCerts* CertificateGraph::edge(const NodeId& a, const NodeId& b) const {
  auto it = edges_.find(edge_key(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

const std::set<NodeId>& CertificateGraph::neighbors(const NodeId& id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw UnknownNode("unknown node " + id.short_hex());
  return it->second;
}

std::vector<NodeId> CertificateGraph::ids() const {
  std::vector<NodeId> out;
  out.reserve(vertices_.size());
  for (const auto& [id, _] : vertices_) out.push_back(id);
  return out;
}

std::size_t degree(const CertificateGraph& g, const NodeId& v) { return g.degree(v); }

std::optional<std::vector<NodeId>> find_certificate_chain(const CertificateGraph& g,
                                                          const NodeId& from, const NodeId& to) {
  if (!g.has_vertex(from) || !g.has_vertex(to)) throw UnknownNode("chain endpoint is not a vertex");
  if (from == to) throw std::invalid_argument("chain endpoints must differ");
  std::map<NodeId, NodeId> parent;
  std::deque<NodeId> queue{from};
  parent.emplace(from, from);
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    if (cur == to) break;
    for (const auto& n : g.neighbors(cur)) {
      if (parent.try_emplace(n, cur).second) queue.push_back(n);
    }
  }
  if (!parent.contains(to)) return std::nullopt;
  std::vector<NodeId> path{to};
  while (path.back() != from) path.push_back(parent.at(path.back()));
  return std::vector<NodeId>(path.rbegin(), path.rend());
}

const char* to_string(ChainFailure f) {
  switch (f) {
    case ChainFailure::None: return "ok";
    case ChainFailure::TooShort: return "chain too short";
    case ChainFailure::UnknownNode: return "unknown node";
    case ChainFailure::MissingCertificate: return "missing certificate";
    case ChainFailure::BadSignature: return "bad signature";
    case ChainFailure::Expired: return "expired";
  }
  return "?";
}

ChainVerdict verify_chain(std::span<const NodeId> chain, const CertificateGraph& g, Timestamp now) {
  ChainVerdict v;
  if (chain.size() < 2) {
    v.reason = ChainFailure::TooShort;
    return v;
  }
  if (!g.has_vertex(chain.front())) {
    v.reason = ChainFailure::UnknownNode;
    return v;
  }
  PublicKey trusted = g.vertex(chain.front()).key;
  for (std::size_t hop = 0; hop + 1 < chain.size(); ++hop) {
    v.failed_hop = hop;
    const EdgeCerts* e = g.edge(chain[hop], chain[hop + 1]);
    if (e == nullptr) {
      v.reason = ChainFailure::MissingCertificate;
      return v;
    }
    const Certificate& c = e->issued_by(chain[hop]);
    if (c.issuer != chain[hop] || c.subject != chain[hop + 1]) {
      v.reason = ChainFailure::MissingCertificate;
      return v;
    }
    if (!signature_valid(c, trusted)) {
      v.reason = ChainFailure::BadSignature;
      return v;
    }
    if (c.expired_at(now)) {
      v.reason = ChainFailure::Expired;
      return v;
    }
    trusted = c.subject_key;
  }
  v.ok = true;
  v.failed_hop = 0;
  v.endpoint_key = trusted;
  return v;
}

CertificateGraph expire_unrenewed(const CertificateGraph& g, Timestamp now,
                                  const std::optional<NodeId>& keep) {
  CertificateGraph out;
  for (const auto& [id, info] : g.vertices()) out.add_vertex(id, info);
  for (const auto& [key, certs] : g.edges()) {
    if (!certs.low_to_high.expired_at(now) && !certs.high_to_low.expired_at(now)) {
      out.add_verified_edge(certs);
    }
  }
  for (const auto& id : out.ids()) {
    if (out.degree(id) == 0 && id != keep) out.remove_vertex(id);
  }
  return out;
}

}  // namespace vanetauth
