#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "vanetauth/sim.hpp"

namespace vanetauth::sim {

namespace {

constexpr double kSaturationShare = 0.9;

void note_saturation(World& w) {
  if (w.metrics.saturation_tick >= 0) return;
  std::size_t full = 0;
  for (const auto& n : w.nodes) {
    if (n.node.store.size() >= w.lim()) ++full;
  }
  if (static_cast<double>(full) >= kSaturationShare * static_cast<double>(w.nodes.size())) {
    w.metrics.saturation_tick = w.now;
  }
}

void sweep(World& w) {
  note_saturation(w);
  if (!invariants_hold(w)) ++w.metrics.invariant_violations;
}

}  // namespace

RunMetrics run_single(const SimConfig& cfg, std::size_t run_index) {
  Rng rng = Rng::derive(cfg.seed, run_index);
  World w = init_world(cfg, rng, run_index);
  sweep(w);
  for (std::int64_t t = 0; t < cfg.duration; ++t) {
    step(w, rng);
    if (cfg.join_rate > 0.0 && rng.chance(cfg.join_rate)) join_node(w, rng);
    drop_unrenewed(w, w.now);
    sweep(w);
  }
  return w.metrics;
}

SimMetrics mean_of(const std::vector<RunMetrics>& runs) {
  SimMetrics m;
  if (runs.empty()) return m;
  for (const auto& r : runs) {
    m.total_connections += static_cast<double>(r.total);
    m.successful_connections += static_cast<double>(r.successful);
    m.failed_connections += static_cast<double>(r.failed);
    m.added_information += static_cast<double>(r.added_info);
    m.keystore_updates += static_cast<double>(r.ks_updates);
  }
  const double n = static_cast<double>(runs.size());
  m.total_connections /= n;
  m.successful_connections /= n;
  m.failed_connections /= n;
  m.added_information /= n;
  m.keystore_updates /= n;
  return m;
}

ExperimentResult run_experiment_serial(const SimConfig& cfg) {
  cfg.validate();
  ExperimentResult out{cfg, std::vector<RunMetrics>(cfg.runs), {}};
  for (std::size_t r = 0; r < cfg.runs; ++r) out.runs[r] = run_single(cfg, r);
  out.means = mean_of(out.runs);
  return out;
}

ExperimentResult run_experiment_parallel(const SimConfig& cfg) {
  cfg.validate();
  ExperimentResult out{cfg, std::vector<RunMetrics>(cfg.runs), {}};
  const auto n = static_cast<std::int64_t>(cfg.runs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < n; ++r) {
    out.runs[static_cast<std::size_t>(r)] = run_single(cfg, static_cast<std::size_t>(r));
  }
  out.means = mean_of(out.runs);
  return out;
}

ExperimentResult run_experiment(const SimConfig& cfg) { return run_experiment_parallel(cfg); }

std::string to_csv(const std::vector<ExperimentResult>& results) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& e : results) {
    for (const auto& r : e.runs) {
      os << e.cfg.node_count << ',' << r.run + 1 << ',' << r.total << ',' << r.successful << ','
         << r.failed << ',' << r.added_info << ',' << r.ks_updates << '\n';
    }
  }
  return os.str();
}

std::string to_json(const std::vector<ExperimentResult>& results) {
  nlohmann::ordered_json doc;
  doc["experiments"] = nlohmann::ordered_json::array();
  for (const auto& e : results) {
    nlohmann::ordered_json x;
    x["nodes"] = e.cfg.node_count;
    x["runs"] = e.runs.size();
    x["seed"] = e.cfg.seed;
    x["duration"] = e.cfg.duration;
    x["lim"] = e.cfg.effective_lim();
    x["width"] = e.cfg.effective_width();
    x["height"] = e.cfg.effective_height();
    x["means"] = {{"total_connections", e.means.total_connections},
                  {"successful_connections", e.means.successful_connections},
                  {"failed_connections", e.means.failed_connections},
                  {"added_information", e.means.added_information},
                  {"keystore_updates", e.means.keystore_updates}};
    x["success_ratio"] = e.means.success_ratio();
    doc["experiments"].push_back(std::move(x));
  }
  return doc.dump(2) + "\n";
}

std::string format_table(const std::vector<ExperimentResult>& results) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "Metric";
  for (const auto& e : results) {
    os << std::right << std::setw(12) << (std::to_string(e.cfg.node_count) + " nodes");
  }
  os << '\n';
  auto row = [&](const char* name, double SimMetrics::*field) {
    os << std::left << std::setw(24) << name << std::fixed << std::setprecision(1);
    for (const auto& e : results) os << std::right << std::setw(12) << e.means.*field;
    os << '\n';
  };
  row("Total Connections", &SimMetrics::total_connections);
  row("Successful Connections", &SimMetrics::successful_connections);
  row("Failed Connections", &SimMetrics::failed_connections);
  row("Added Information", &SimMetrics::added_information);
  row("Key Store Updates", &SimMetrics::keystore_updates);
  return os.str();
}

}  // namespace vanetauth::sim
