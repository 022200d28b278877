#include "vanetauth/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "vanetauth/rng.hpp"

namespace vanetauth {

std::string to_string(EncodingValue v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

EncodingValue parse_encoding(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  EncodingValue v = 0;
  const EncodingValue limit = ~EncodingValue{0} / 10;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal integer: " + s);
    if (v > limit) throw std::invalid_argument("integer too large: " + s);
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

EdgeSet::EdgeSet(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > 64) throw std::invalid_argument("EdgeSet supports at most 64 vertices");
}

void EdgeSet::add(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("self-loop");
  rows_[u] |= std::uint64_t{1} << v;
  rows_[v] |= std::uint64_t{1} << u;
}

void EdgeSet::remove(Vertex u, Vertex v) {
  rows_[u] &= ~(std::uint64_t{1} << v);
  rows_[v] &= ~(std::uint64_t{1} << u);
}

bool EdgeSet::has(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return (rows_[u] >> v) & 1;
}

int EdgeSet::degree(Vertex v) const { return std::popcount(rows_[v]); }

std::size_t EdgeSet::edge_count() const {
  std::size_t total = 0;
  for (auto r : rows_) total += static_cast<std::size_t>(std::popcount(r));
  return total / 2;
}

EdgeSet EdgeSet::permuted(std::span<const Vertex> perm) const {
  EdgeSet out(n_);
  for (Vertex u = 0; u < n_; ++u) {
    std::uint64_t r = rows_[u] >> (u + 1) << (u + 1);
    while (r != 0) {
      Vertex v = std::countr_zero(r);
      r &= r - 1;
      out.add(perm[u], perm[v]);
    }
  }
  return out;
}

bool EdgeSet::contains_all(const EdgeSet& other) const {
  if (other.n_ != n_) return false;
  for (int i = 0; i < n_; ++i) {
    if ((other.rows_[i] & ~rows_[i]) != 0) return false;
  }
  return true;
}

std::vector<int> EdgeSet::degree_sequence() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  std::sort(d.rbegin(), d.rend());
  return d;
}

Bytes EdgeSet::pack() const {
  const int width = n_ * (n_ - 1) / 2;
  Bytes out(static_cast<std::size_t>((width + 7) / 8), 0);
  int k = 0;
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = u + 1; v < n_; ++v, ++k) {
      if (has(u, v)) out[k / 8] |= static_cast<std::uint8_t>(0x80 >> (k % 8));
    }
  }
  return out;
}

EdgeSet EdgeSet::unpack(int n, std::span<const std::uint8_t> packed) {
  const int width = n * (n - 1) / 2;
  if (packed.size() != static_cast<std::size_t>((width + 7) / 8)) {
    throw std::invalid_argument("packed edge set has wrong length");
  }
  EdgeSet g(n);
  int k = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++k) {
      if (packed[k / 8] & (0x80 >> (k % 8))) g.add(u, v);
    }
  }
  return g;
}

int encoding_width(int n) { return n * (n - 1) / 2; }

int pair_index(int n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  // Pairs in rows 0..u-1 come first: sum_{r<u} (n-1-r).
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

bool is_permutation_of_range(std::span<const Vertex> seq, int n) {
  if (static_cast<int>(seq.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex v : seq) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_hamiltonian_cycle(const EdgeSet& g, std::span<const Vertex> cycle) {
  const int n = g.vertex_count();
  if (n < 3 || !is_permutation_of_range(cycle, n)) return false;
  for (int i = 0; i < n; ++i) {
    if (!g.has(cycle[i], cycle[(i + 1) % n])) return false;
  }
  return true;
}

EdgeSet cycle_edges(int n, std::span<const Vertex> cycle) {
  EdgeSet g(n);
  for (std::size_t i = 0; i < cycle.size(); ++i) g.add(cycle[i], cycle[(i + 1) % cycle.size()]);
  return g;
}

CycleEncoding encode_cycle(std::span<const Vertex> cycle) {
  const int n = static_cast<int>(cycle.size());
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  if (n > kMaxEncodedVertices) throw std::invalid_argument("cycle too large to encode");
  if (!is_permutation_of_range(cycle, n)) {
    throw std::invalid_argument("cycle must visit every vertex exactly once");
  }
  const int width = encoding_width(n);
  EncodingValue value = 0;
  for (int i = 0; i < n; ++i) {
    int k = pair_index(n, cycle[i], cycle[(i + 1) % n]);
    value |= EncodingValue{1} << (width - 1 - k);
  }
  return {n, value};
}

Cycle canonical_cycle(std::span<const Vertex> cycle) {
  const std::size_t n = cycle.size();
  auto start = static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), 0) - cycle.begin());
  Cycle fwd(n);
  for (std::size_t i = 0; i < n; ++i) fwd[i] = cycle[(start + i) % n];
  if (n > 2 && fwd[1] > fwd[n - 1]) std::reverse(fwd.begin() + 1, fwd.end());
  return fwd;
}

Cycle decode_cycle(EncodingValue value, int n) {
  if (n < 3 || n > kMaxEncodedVertices) throw std::invalid_argument("vertex count out of range");
  const int width = encoding_width(n);
  if (width < 128 && (value >> width) != 0) throw NotACycle("value exceeds encoding width");

  EdgeSet g(n);
  int edges = 0;
  int k = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++k) {
      if ((value >> (width - 1 - k)) & 1) {
        g.add(u, v);
        ++edges;
      }
    }
  }
  if (edges != n) throw NotACycle("wrong edge count");
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != 2) throw NotACycle("vertex degree is not 2");
  }

  Cycle walk{0};
  Vertex prev = -1;
  Vertex cur = 0;
  while (true) {
    std::uint64_t r = g.row(cur);
    Vertex a = std::countr_zero(r);
    Vertex b = std::countr_zero(r & (r - 1));
    Vertex next = (a != prev) ? a : b;
    if (next == 0) break;
    walk.push_back(next);
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(walk.size()) != n) throw NotACycle("bits form disjoint subcycles");
  return canonical_cycle(walk);
}

Permutation random_permutation(int n, Rng& rng) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

Cycle random_cycle(int n, Rng& rng) { return random_permutation(n, rng); }

Permutation invert(std::span<const Vertex> perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<Vertex>(i);
  return inv;
}

Cycle apply(std::span<const Vertex> perm, std::span<const Vertex> cycle) {
  Cycle out(cycle.size());
  for (std::size_t i = 0; i < cycle.size(); ++i) out[i] = perm[cycle[i]];
  return out;
}

}  // namespace vanetauth
