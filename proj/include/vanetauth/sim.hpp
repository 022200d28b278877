#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vanetauth/handshake.hpp"

namespace vanetauth::sim {

enum class Mobility { RandomWalk, RandomWaypoint };

struct SimConfig {
  std::size_t node_count = 15;
  double width = 0.0;   // 0: sized from node_count for a mean initial degree near 3
  double height = 0.0;
  double comm_range = 1.0;
  double min_speed = 0.0;  // distance per tick
  double max_speed = 0.1;
  std::int64_t duration = 600;  // ticks; one tick is one simulated second
  std::size_t lim = 0;          // 0: derived from node_count (see effective_lim)
  std::size_t runs = 25;
  std::uint64_t seed = 1;
  Mobility mobility = Mobility::RandomWalk;

  // Identity keys: primes of this size, public exponents from cycles on key_vertices.
  int prime_bits = 16;
  int key_vertices = 7;

  int proof_rounds = kDefaultProofRounds;
  int witness_vertices = kDefaultWitnessVertices;
  double decoy_density = kDefaultDecoyDensity;

  /// Probability per tick that a newcomer arrives and asks for admission.
  double join_rate = 0.0;
  std::size_t admission_threshold = kDefaultAdmissionThreshold;
  Timestamp certificate_lifetime = kDefaultCertificateLifetime;
  /// Re-draw the initial placement until the proximity graph is connected.
  bool connected_start = true;

  double effective_width() const;
  double effective_height() const;
  std::size_t effective_lim() const;
  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

/// Side length giving a mean initial degree near 3 for n nodes at range 1.
double default_side(std::size_t node_count, double comm_range = 1.0);

struct SimNode {
  Node node;
  std::string address;
  double x = 0.0;
  double y = 0.0;
  double target_x = 0.0;  // random waypoint destination
  double target_y = 0.0;
};

/// Raw counters of one run.
struct RunMetrics {
  std::size_t run = 0;
  std::uint64_t total = 0;
  std::uint64_t successful = 0;
  std::uint64_t failed = 0;
  std::uint64_t added_info = 0;
  std::uint64_t ks_updates = 0;
  std::uint64_t joins = 0;
  std::uint64_t failed_joins = 0;
  /// First tick at which 90% of nodes held a full store; -1 if never.
  std::int64_t saturation_tick = -1;
  /// Ticks at which an accounting or store-bound check failed.
  std::uint64_t invariant_violations = 0;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Means over runs, in the row order of the results table.
struct SimMetrics {
  double total_connections = 0.0;
  double successful_connections = 0.0;
  double failed_connections = 0.0;
  double added_information = 0.0;
  double keystore_updates = 0.0;

  double success_ratio() const { return total_connections > 0 ? successful_connections / total_connections : 0.0; }
  friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

struct World {
  SimConfig cfg;
  std::vector<SimNode> nodes;
  CertificateGraph graph;  // global certificate graph
  std::set<std::pair<std::size_t, std::size_t>> in_range;
  Timestamp now = 0;
  std::size_t run_index = 0;
  RunMetrics metrics;

  std::size_t lim() const { return cfg.effective_lim(); }
};

World init_world(const SimConfig& cfg, Rng& rng, std::size_t run_index = 0);

struct ContactOutcome {
  bool success = false;
  Failure failure = Failure::None;
  std::uint64_t stores_changed = 0;
  std::uint64_t certificates_added = 0;
};

/// Runs the full handshake between nodes i and j and applies the store updates.
ContactOutcome on_contact(World& w, std::size_t i, std::size_t j, Rng& rng);

/// Moves every node, then fires contacts for pairs newly in range, in
/// ascending pair order. Returns those pairs.
std::vector<std::pair<std::size_t, std::size_t>> step(World& w, Rng& rng);
/// Only the movement part of step.
void move_nodes(World& w, Rng& rng);
std::set<std::pair<std::size_t, std::size_t>> pairs_in_range(const World& w);

/// Places a newcomer and admits it through in-range sponsors. Counts a
/// failed join (and removes nothing) when fewer than the threshold are in range.
bool join_node(World& w, Rng& rng);
/// Applies certificate expiry to the global graph and to every store.
void drop_unrenewed(World& w, Timestamp now);

/// Checks accounting (total = successful + failed) and store bounds.
bool invariants_hold(const World& w);

RunMetrics run_single(const SimConfig& cfg, std::size_t run_index);

struct ExperimentResult {
  SimConfig cfg;
  std::vector<RunMetrics> runs;
  SimMetrics means;
};

SimMetrics mean_of(const std::vector<RunMetrics>& runs);

/// Reference implementation: runs one after another.
ExperimentResult run_experiment_serial(const SimConfig& cfg);
/// Runs distributed over OpenMP threads; identical output to the serial one.
ExperimentResult run_experiment_parallel(const SimConfig& cfg);
ExperimentResult run_experiment(const SimConfig& cfg);

inline constexpr const char* kCsvHeader = "nodes,run,total,successful,failed,added_info,ks_updates";

/// One header line and one row per run; each row ends with '\n'.
std::string to_csv(const std::vector<ExperimentResult>& results);
std::string to_json(const std::vector<ExperimentResult>& results);
/// Means table: one row per metric, one column per experiment.
std::string format_table(const std::vector<ExperimentResult>& results);

}  // namespace vanetauth::sim
