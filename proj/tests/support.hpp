#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "vanetauth/handshake.hpp"
#include "vanetauth/keystore.hpp"

namespace vanetauth::testing {

/// Identities with 16-bit primes and 7-vertex key cycles, cached per name so
/// the (slow-ish) key generation runs once per test binary.
inline const Identity& identity(const std::string& name) {
  static std::map<std::string, Identity> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  Digest d = sha256(name);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | d[i];
  Rng rng(seed);
  std::uint64_t p = random_prime(16, rng);
  std::uint64_t q;
  do {
    q = random_prime(16, rng);
  } while (q == p);
  return cache.emplace(name, make_identity(name, generate_keypair(p, q, 7, rng))).first->second;
}

/// `count` identities sorted by NodeId, so index order equals ID order.
inline std::vector<Identity> sorted_identities(std::size_t count, const std::string& prefix = "v") {
  std::vector<Identity> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(identity(prefix + std::to_string(i)));
  std::sort(out.begin(), out.end(), [](const Identity& a, const Identity& b) { return a.id < b.id; });
  return out;
}

inline EdgeCerts mutual(const Identity& a, const Identity& b, Timestamp at = 0,
                        Timestamp lifetime = kDefaultCertificateLifetime) {
  Certificate ab = issue_certificate(a.id, a.keys, b.id, b.public_key(), at, lifetime);
  Certificate ba = issue_certificate(b.id, b.keys, a.id, a.public_key(), at, lifetime);
  return a.id < b.id ? EdgeCerts{ab, ba} : EdgeCerts{ba, ab};
}

/// Certificate graph over `ids` with the given index pairs as edges.
inline CertificateGraph graph_of(const std::vector<Identity>& ids,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<int>& vertices = {}) {
  CertificateGraph g;
  if (vertices.empty()) {
    for (const auto& id : ids) g.add_vertex(id.id, id.public_key());
  } else {
    for (int v : vertices) g.add_vertex(ids[v].id, ids[v].public_key());
  }
  for (auto [u, v] : edges) {
    g.add_vertex(ids[u].id, ids[u].public_key());
    g.add_vertex(ids[v].id, ids[v].public_key());
    g.add_verified_edge(mutual(ids[u], ids[v]));
  }
  return g;
}

/// Plain BFS distance table over an adjacency matrix; -1 when unreachable.
inline std::vector<int> bfs_distances(const std::vector<std::vector<bool>>& adj, int from) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (adj[u][v] && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(static_cast<int>(v));
      }
    }
  }
  return dist;
}

/// Replay of the store-update pseudocode on an adjacency matrix:
/// KS := {owner}; for each i in KS (in admission order), repeatedly admit
/// the not-yet-admitted union neighbour of i with the largest union degree
/// (smallest index on ties) while |KS| < lim. Returns admitted vertices and
/// the admitting edges.
struct Replay {
  std::vector<int> members;
  std::vector<std::pair<int, int>> edges;  // (min, max)
};

inline Replay replay_update(const std::vector<std::vector<bool>>& adj, int owner, std::size_t lim) {
  const int n = static_cast<int>(adj.size());
  auto degree = [&](int v) { return static_cast<int>(std::count(adj[v].begin(), adj[v].end(), true)); };
  Replay r;
  std::vector<bool> in(n, false);
  r.members.push_back(owner);
  in[owner] = true;
  for (std::size_t k = 0; k < r.members.size(); ++k) {
    const int i = r.members[k];
    for (;;) {
      if (r.members.size() >= lim) break;
      int best = -1;
      for (int j = 0; j < n; ++j) {
        if (!adj[i][j] || in[j]) continue;
        if (best < 0 || degree(j) > degree(best)) best = j;
      }
      if (best < 0) break;
      in[best] = true;
      r.members.push_back(best);
      r.edges.emplace_back(std::min(i, best), std::max(i, best));
    }
  }
  std::sort(r.edges.begin(), r.edges.end());
  return r;
}

/// Two nodes whose stores hold exactly one common ID ("X"), A-X and X-B.
struct SharedPair {
  Node a;
  Node b;
  Identity x;
};

inline SharedPair shared_pair(std::size_t lim = 16) {
  const Identity& a = identity("pair-A");
  const Identity& b = identity("pair-B");
  const Identity& x = identity("pair-X");
  auto store = [&](const Identity& owner) {
    CertificateGraph g;
    g.add_vertex(owner.id, owner.public_key());
    g.add_vertex(x.id, x.public_key());
    g.add_verified_edge(mutual(owner, x));
    return Node{owner, KeyStore(owner.id, std::move(g), lim)};
  };
  return SharedPair{store(a), store(b), x};
}

inline std::pair<Node, Node> disjoint_pair(std::size_t lim = 16) {
  const Identity& a = identity("pair-A");
  const Identity& b = identity("pair-B");
  const Identity& x = identity("pair-X");
  const Identity& y = identity("pair-Y");
  auto store = [&](const Identity& owner, const Identity& f) {
    CertificateGraph g;
    g.add_vertex(owner.id, owner.public_key());
    g.add_vertex(f.id, f.public_key());
    g.add_verified_edge(mutual(owner, f));
    return Node{owner, KeyStore(owner.id, std::move(g), lim)};
  };
  return {store(a, x), store(b, y)};
}

}  // namespace vanetauth::testing
