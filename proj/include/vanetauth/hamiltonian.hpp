#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanetauth/hash.hpp"

namespace vanetauth {

/// Vertices are labelled 0..n-1 throughout the library.
using Vertex = int;
/// Ordered vertex sequence; consecutive entries (and last→first) are edges.
using Cycle = std::vector<Vertex>;
/// Permutation as an image table: vertex v maps to perm[v].
using Permutation = std::vector<Vertex>;

/// Upper-triangular bit patterns up to 16 vertices (120 bits).
using EncodingValue = unsigned __int128;
inline constexpr int kMaxEncodedVertices = 16;

std::string to_string(EncodingValue v);
/// Parses a non-negative decimal; throws std::invalid_argument.
EncodingValue parse_encoding(const std::string& s);

class NotACycle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on at most 64 vertices, one adjacency word per row.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int n);

  int vertex_count() const { return n_; }
  void add(Vertex u, Vertex v);
  void remove(Vertex u, Vertex v);
  bool has(Vertex u, Vertex v) const;
  int degree(Vertex v) const;
  std::size_t edge_count() const;
  std::uint64_t row(Vertex v) const { return rows_[v]; }

  /// Image graph: edge {u,v} becomes {perm[u], perm[v]}.
  EdgeSet permuted(std::span<const Vertex> perm) const;
  bool contains_all(const EdgeSet& other) const;
  std::vector<int> degree_sequence() const;  // descending

  /// Packed upper-triangular bits, row-major, most significant bit first.
  Bytes pack() const;
  static EdgeSet unpack(int n, std::span<const std::uint8_t> packed);

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Integer form of a Hamiltonian cycle: bits of the upper-triangular
/// adjacency entries (0,1),(0,2),…,(0,n-1),(1,2),…,(n-2,n-1), first pair
/// in the most significant position of an n(n-1)/2-bit word.
struct CycleEncoding {
  int vertex_count = 0;
  EncodingValue value = 0;

  friend bool operator==(const CycleEncoding&, const CycleEncoding&) = default;
};

int encoding_width(int n);
/// Position of pair (u,v) counted from the most significant end.
int pair_index(int n, Vertex u, Vertex v);

bool is_permutation_of_range(std::span<const Vertex> seq, int n);
bool is_hamiltonian_cycle(const EdgeSet& g, std::span<const Vertex> cycle);
EdgeSet cycle_edges(int n, std::span<const Vertex> cycle);

/// Throws std::invalid_argument unless `cycle` is a permutation of 0..n-1, n >= 3.
CycleEncoding encode_cycle(std::span<const Vertex> cycle);
/// Returns the canonical rotation: starts at 0 and cycle[1] < cycle[n-1].
/// Throws NotACycle when the bits are not a single spanning cycle.
Cycle decode_cycle(EncodingValue value, int n);
Cycle canonical_cycle(std::span<const Vertex> cycle);

Cycle random_cycle(int n, class Rng& rng);
Permutation random_permutation(int n, class Rng& rng);
Permutation invert(std::span<const Vertex> perm);
Cycle apply(std::span<const Vertex> perm, std::span<const Vertex> cycle);

}  // namespace vanetauth
