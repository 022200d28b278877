#include "vanetauth/zkp.hpp"

namespace vanetauth {

Cycle cycle_from_shared_key(std::uint64_t x, int n) {
  if (n < 3 || n > kMaxEncodedVertices) throw NotACycle("witness vertex count out of range");
  const int width = encoding_width(n);
  EncodingValue residue = x;
  if (width < 64) residue &= (EncodingValue{1} << width) - 1;
  try {
    return decode_cycle(residue, n);
  } catch (const NotACycle&) {
  }
  for (std::uint64_t counter = 0;; ++counter) {
    Bytes material;
    append_u64(material, x);
    append_u64(material, counter);
    Digest d = sha256(material);
    std::uint64_t seed = 0;
    for (int i = 0; i < 8; ++i) seed = seed << 8 | d[i];
    Rng rng(seed);
    Cycle c = random_cycle(n, rng);
    if (is_permutation_of_range(c, n)) return canonical_cycle(c);
  }
}

WitnessGraph build_witness_graph(const Cycle& cycle, double decoy_density, Rng& rng) {
  const int n = static_cast<int>(cycle.size());
  WitnessGraph w{cycle_edges(n, cycle), canonical_cycle(cycle)};
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (w.graph.has(u, v)) continue;
      if (rng.chance(decoy_density)) w.graph.add(u, v);
    }
  }
  return w;
}

WitnessGraph build_witness_graph(std::uint64_t x, int n, double decoy_density, Rng& rng) {
  return build_witness_graph(cycle_from_shared_key(x, n), decoy_density, rng);
}

}  // namespace vanetauth
