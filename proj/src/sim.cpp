#include "vanetauth/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vanetauth::sim {

namespace {

// Boundary effects cut the mean degree of a square below the infinite-plane
// value (n-1)·π·r²/A; this factor was fitted by sampling placements.
constexpr double kBoundaryCorrection = 0.80;

double distance(const SimNode& a, const SimNode& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double reflect(double v, double hi) {
  if (hi <= 0.0) return 0.0;
  while (v < 0.0 || v > hi) {
    if (v < 0.0) v = -v;
    if (v > hi) v = 2.0 * hi - v;
  }
  return v;
}

/// Uniform placement, except that a point out of range of every earlier node
/// is re-drawn, so the proximity graph comes out connected.
void place_connected(std::vector<SimNode>& nodes, double width, double height, double range, Rng& rng) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (;;) {
      nodes[i].x = rng.unit() * width;
      nodes[i].y = rng.unit() * height;
      bool linked = i == 0;
      for (std::size_t k = 0; k < i && !linked; ++k) linked = distance(nodes[k], nodes[i]) <= range;
      if (linked) break;
    }
  }
}

Identity make_sim_identity(const SimConfig& cfg, std::size_t run, std::size_t index, Rng& rng) {
  std::uint64_t p = random_prime(cfg.prime_bits, rng);
  std::uint64_t q;
  do {
    q = random_prime(cfg.prime_bits, rng);
  } while (q == p);
  IdentityKeyPair keys = generate_keypair(p, q, cfg.key_vertices, rng);
  return make_identity("run-" + std::to_string(run) + "/node-" + std::to_string(index), keys);
}

std::string make_address(std::size_t index) {
  return "10.0." + std::to_string(index / 250) + "." + std::to_string(index % 250 + 1);
}

/// Store of `owner` seeded from its direct certificates.
KeyStore neighbourhood_store(const CertificateGraph& g, const NodeId& owner, std::size_t lim) {
  CertificateGraph star;
  star.add_vertex(owner, g.vertex(owner));
  for (const auto& n : g.neighbors(owner)) {
    star.add_vertex(n, g.vertex(n));
    star.add_verified_edge(*g.edge(owner, n));
  }
  return select_keystore(owner, star, lim);
}

std::uint64_t new_edges(const KeyStore& before, const KeyStore& after) {
  std::uint64_t added = 0;
  for (const auto& [key, certs] : after.graph().edges()) {
    if (!before.graph().edges().contains(key)) ++added;
  }
  return added;
}

bool same_structure(const KeyStore& a, const KeyStore& b) {
  const auto& va = a.graph().vertices();
  const auto& vb = b.graph().vertices();
  if (va.size() != vb.size() || a.graph().edge_count() != b.graph().edge_count()) return false;
  for (auto ia = va.begin(), ib = vb.begin(); ia != va.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
  }
  for (const auto& [key, certs] : a.graph().edges()) {
    const EdgeCerts* other = b.graph().edge(key.first, key.second);
    if (other == nullptr || !(*other == certs)) return false;
  }
  return true;
}

Timestamp earliest_expiry(const CertificateGraph& g) {
  Timestamp t = std::numeric_limits<Timestamp>::max();
  for (const auto& [key, certs] : g.edges()) {
    t = std::min({t, certs.low_to_high.expires_at, certs.high_to_low.expires_at});
  }
  return t;
}

}  // namespace

double default_side(std::size_t node_count, double comm_range) {
  const double n = static_cast<double>(std::max<std::size_t>(node_count, 2));
  return comm_range * std::sqrt((n - 1.0) * std::numbers::pi * kBoundaryCorrection / 3.0);
}

double SimConfig::effective_width() const { return width > 0.0 ? width : default_side(node_count, comm_range); }
double SimConfig::effective_height() const { return height > 0.0 ? height : default_side(node_count, comm_range); }

std::size_t SimConfig::effective_lim() const {
  if (lim > 0) return lim;
  return std::max<std::size_t>(8, (node_count * 2 + 4) / 5);
}

void SimConfig::validate() const {
  if (node_count == 0) throw std::invalid_argument("node_count must be positive");
  if (runs == 0) throw std::invalid_argument("runs must be positive");
  if (duration < 0) throw std::invalid_argument("duration must not be negative");
  if (width < 0.0 || height < 0.0) throw std::invalid_argument("area must not be negative");
  if (!(comm_range > 0.0)) throw std::invalid_argument("comm_range must be positive");
  if (min_speed < 0.0 || max_speed < min_speed) throw std::invalid_argument("bad speed range");
  if (join_rate < 0.0 || join_rate > 1.0) throw std::invalid_argument("join_rate must be in [0, 1]");
  if (admission_threshold < 2) throw std::invalid_argument("admission threshold must be at least 2");
  if (certificate_lifetime <= 0) throw std::invalid_argument("certificate lifetime must be positive");
  if (proof_rounds < 1) throw std::invalid_argument("proof_rounds must be positive");
  if (witness_vertices < 3 || witness_vertices > kMaxEncodedVertices) {
    throw std::invalid_argument("witness_vertices out of range");
  }
  if (decoy_density < 0.0 || decoy_density > 1.0) throw std::invalid_argument("decoy_density must be in [0, 1]");
  if (prime_bits < 8 || prime_bits > 32) throw std::invalid_argument("prime_bits must be 8..32");
  if (key_vertices < 3) throw std::invalid_argument("key_vertices must be at least 3");
}

std::set<std::pair<std::size_t, std::size_t>> pairs_in_range(const World& w) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < w.nodes.size(); ++j) {
      if (distance(w.nodes[i], w.nodes[j]) <= w.cfg.comm_range) out.emplace(i, j);
    }
  }
  return out;
}

World init_world(const SimConfig& cfg, Rng& rng, std::size_t run_index) {
  cfg.validate();
  World w;
  w.cfg = cfg;
  w.run_index = run_index;
  w.metrics.run = run_index;
  const double width = cfg.effective_width();
  const double height = cfg.effective_height();

  for (std::size_t i = 0; i < cfg.node_count; ++i) {
    Identity id = make_sim_identity(cfg, run_index, i, rng);
    w.nodes.push_back(SimNode{make_node(id, w.lim()), make_address(i), 0, 0, 0, 0});
  }
  if (cfg.connected_start) {
    place_connected(w.nodes, width, height, cfg.comm_range, rng);
  } else {
    for (auto& n : w.nodes) {
      n.x = rng.unit() * width;
      n.y = rng.unit() * height;
    }
  }
  for (auto& n : w.nodes) {
    n.target_x = n.x;
    n.target_y = n.y;
  }

  for (const auto& n : w.nodes) w.graph.add_vertex(n.node.id(), n.node.identity.public_key());
  w.in_range = pairs_in_range(w);
  for (const auto& [i, j] : w.in_range) {
    const Identity& a = w.nodes[i].node.identity;
    const Identity& b = w.nodes[j].node.identity;
    w.graph.add_edge(issue_certificate(a.id, a.keys, b.id, b.public_key(), 0, cfg.certificate_lifetime),
                     issue_certificate(b.id, b.keys, a.id, a.public_key(), 0, cfg.certificate_lifetime));
  }
  for (auto& n : w.nodes) n.node.store = neighbourhood_store(w.graph, n.node.id(), w.lim());
  return w;
}

ContactOutcome on_contact(World& w, std::size_t i, std::size_t j, Rng& rng) {
  SessionParams params;
  params.rounds = w.cfg.proof_rounds;
  params.witness_vertices = w.cfg.witness_vertices;
  params.decoy_density = w.cfg.decoy_density;
  params.lim = w.lim();
  Handshake h(w.nodes[i].node, w.nodes[j].node, params, rng.next(), w.now);
  h.run();

  ContactOutcome out;
  ++w.metrics.total;
  if (!h.mutually_established()) {
    ++w.metrics.failed;
    out.failure = h.a().failure() != Failure::None ? h.a().failure() : h.b().failure();
    return out;
  }
  ++w.metrics.successful;
  out.success = true;
  for (auto [idx, session] : {std::pair{i, &h.a()}, std::pair{j, &h.b()}}) {
    KeyStore& store = w.nodes[idx].node.store;
    const KeyStore& updated = session->updated_store();
    if (!same_structure(store, updated)) {
      ++out.stores_changed;
      out.certificates_added += new_edges(store, updated);
    }
    store = updated;
  }
  w.metrics.ks_updates += out.stores_changed;
  w.metrics.added_info += out.certificates_added;
  return out;
}

void move_nodes(World& w, Rng& rng) {
  const double width = w.cfg.effective_width();
  const double height = w.cfg.effective_height();
  for (auto& n : w.nodes) {
    double speed = w.cfg.min_speed + rng.unit() * (w.cfg.max_speed - w.cfg.min_speed);
    if (w.cfg.mobility == Mobility::RandomWalk) {
      double angle = rng.unit() * 2.0 * std::numbers::pi;
      n.x = reflect(n.x + speed * std::cos(angle), width);
      n.y = reflect(n.y + speed * std::sin(angle), height);
      continue;
    }
    double dx = n.target_x - n.x;
    double dy = n.target_y - n.y;
    double dist = std::hypot(dx, dy);
    if (dist <= speed) {
      n.x = n.target_x;
      n.y = n.target_y;
      n.target_x = rng.unit() * width;
      n.target_y = rng.unit() * height;
    } else {
      n.x += dx / dist * speed;
      n.y += dy / dist * speed;
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> step(World& w, Rng& rng) {
  ++w.now;
  move_nodes(w, rng);
  auto current = pairs_in_range(w);
  std::vector<std::pair<std::size_t, std::size_t>> fresh;
  std::set_difference(current.begin(), current.end(), w.in_range.begin(), w.in_range.end(),
                      std::back_inserter(fresh));
  w.in_range = std::move(current);
  for (const auto& [i, j] : fresh) on_contact(w, i, j, rng);
  return fresh;
}

bool join_node(World& w, Rng& rng) {
  const std::size_t index = w.nodes.size();
  Identity id = make_sim_identity(w.cfg, w.run_index, index, rng);
  SimNode newcomer{make_node(id, w.lim()), make_address(index), 0, 0, 0, 0};
  newcomer.x = newcomer.target_x = rng.unit() * w.cfg.effective_width();
  newcomer.y = newcomer.target_y = rng.unit() * w.cfg.effective_height();

  std::vector<Identity> sponsors;
  for (const auto& n : w.nodes) {
    if (distance(n, newcomer) <= w.cfg.comm_range && w.graph.has_vertex(n.node.id())) {
      sponsors.push_back(n.node.identity);
    }
  }
  try {
    admit_into(w.graph, id, sponsors, w.cfg.admission_threshold, w.now, w.cfg.certificate_lifetime);
  } catch (const InsufficientSponsors&) {
    ++w.metrics.failed_joins;
    return false;
  }
  newcomer.node.store = neighbourhood_store(w.graph, id.id, w.lim());
  w.nodes.push_back(std::move(newcomer));
  for (std::size_t k = 0; k < index; ++k) {
    if (distance(w.nodes[k], w.nodes[index]) <= w.cfg.comm_range) w.in_range.emplace(k, index);
  }
  ++w.metrics.joins;
  return true;
}

void drop_unrenewed(World& w, Timestamp now) {
  if (now < earliest_expiry(w.graph)) {
    bool any = false;
    for (const auto& n : w.nodes) {
      if (now >= earliest_expiry(n.node.store.graph())) any = true;
    }
    if (!any) return;
  }
  w.graph = expire_unrenewed(w.graph, now);
  for (auto& n : w.nodes) {
    KeyStore& s = n.node.store;
    s = KeyStore(s.owner(), expire_unrenewed(s.graph(), now, s.owner()), s.limit());
  }
}

bool invariants_hold(const World& w) {
  if (w.metrics.total != w.metrics.successful + w.metrics.failed) return false;
  for (const auto& n : w.nodes) {
    const KeyStore& s = n.node.store;
    if (s.size() > w.lim() || !s.contains(n.node.id())) return false;
  }
  return true;
}

}  // namespace vanetauth::sim
