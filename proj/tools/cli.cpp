#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "vanetauth/handshake.hpp"
#include "vanetauth/sim.hpp"
#include "vanetauth/store_file.hpp"

namespace vanetauth::cli {

namespace {

/// Thrown by a subcommand to end with exit code 1 and a message.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedVariable); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string(kSeedVariable) + " is not an unsigned integer");
    }
  }
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) | rd();
}

std::string cycle_text(const Cycle& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) s += '-';
    s += std::to_string(c[i]);
  }
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("cannot write " + path);
}

Node read_store(const std::string& path, std::optional<std::size_t> lim = std::nullopt) {
  try {
    return load_store_file(path, lim);
  } catch (const StoreFormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

IdentityKeyPair random_keypair(int bits, int vertices, Rng& rng) {
  std::uint64_t p = random_prime(bits, rng);
  std::uint64_t q;
  do {
    q = random_prime(bits, rng);
  } while (q == p);
  return generate_keypair(p, q, vertices, rng);
}

// ---------------------------------------------------------------- keygen

struct KeygenOptions {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  int bits = 16;
  int vertices = 7;
  std::optional<std::uint64_t> seed;
  std::string name = "node";
  std::string store_path;
  std::size_t lim = kDefaultStoreLimit;
};

int cmd_keygen(const KeygenOptions& o, std::ostream& out, std::ostream& err) {
  Rng rng(o.seed ? *o.seed : default_seed());
  IdentityKeyPair keys;
  try {
    if ((o.p == 0) != (o.q == 0)) throw InputError("--p and --q must be given together");
    keys = o.p != 0 ? generate_keypair(o.p, o.q, o.vertices, rng) : random_keypair(o.bits, o.vertices, rng);
  } catch (const ExhaustedRetries& e) {
    err << "ExhaustedRetries: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  out << "modulus: " << keys.modulus << '\n';
  out << "public_exponent: " << keys.public_exponent << '\n';
  out << "private_exponent: " << keys.private_exponent << '\n';
  out << "cycle: " << cycle_text(key_cycle(keys)) << '\n';

  if (!o.store_path.empty()) {
    if (std::filesystem::exists(o.store_path)) {
      throw InputError(o.store_path + " already exists; a store file holds one identity");
    }
    Node node = make_node(make_identity(o.name, keys), o.lim);
    write_file(o.store_path, render_store_file(node));
    out << "id: " << node.id().hex() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- demo

struct DemoOptions {
  std::string store_a;
  std::string store_b;
  int rounds = kDefaultProofRounds;
  std::optional<std::uint64_t> seed;
  std::optional<Timestamp> now;
  std::size_t lim = kDefaultStoreLimit;
};

Timestamp latest_issue(const Node& n) {
  Timestamp t = 0;
  for (const auto& [key, certs] : n.store.graph().edges()) {
    t = std::max({t, certs.low_to_high.issued_at, certs.high_to_low.issued_at});
  }
  return t;
}

int cmd_demo(const DemoOptions& o, std::ostream& out, std::ostream& err) {
  if (o.rounds < 1) throw InputError("--rounds must be positive");
  Node a = read_store(o.store_a, o.lim);
  Node b = read_store(o.store_b, o.lim);
  const Timestamp now = o.now ? *o.now : std::max(latest_issue(a), latest_issue(b));

  SessionParams params;
  params.rounds = o.rounds;
  params.lim = o.lim;
  Handshake h(a, b, params, o.seed ? *o.seed : default_seed(), now);
  h.run();

  out << "A " << a.id().short_hex() << " store " << a.store.size() << '\n';
  out << "B " << b.id().short_hex() << " store " << b.store.size() << '\n';
  for (const auto& line : h.transcript_lines()) out << line << '\n';
  out << "messages: " << h.log().size() << '\n';
  if (h.mutually_established()) {
    out << "result: Established (initiator " << (*h.a().is_initiator() ? 'A' : 'B') << ")\n";
    out << "A store after update: " << h.a().updated_store().size() << '\n';
    out << "B store after update: " << h.b().updated_store().size() << '\n';
    return kExitOk;
  }
  Failure f = h.a().failure() != Failure::None ? h.a().failure() : h.b().failure();
  out << "result: Failed " << to_string(f) << '\n';
  err << "authentication failed: " << to_string(f) << '\n';
  return kExitProtocol;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::vector<std::size_t> nodes{15};
  std::size_t runs = 25;
  std::optional<std::uint64_t> seed;
  std::int64_t duration = sim::SimConfig{}.duration;
  double min_speed = 0.0;
  double max_speed = sim::SimConfig{}.max_speed;
  double width = 0.0;
  double height = 0.0;
  double range = 1.0;
  std::size_t lim = 0;
  std::string mobility = "walk";
  double join_rate = 0.0;
  int rounds = kDefaultProofRounds;
  std::string csv_path = "simulation.csv";
  std::string json_path = "simulation.json";
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();
  std::vector<sim::ExperimentResult> results;
  for (std::size_t n : o.nodes) {
    sim::SimConfig cfg;
    cfg.node_count = n;
    cfg.runs = o.runs;
    cfg.seed = seed;
    cfg.duration = o.duration;
    cfg.min_speed = o.min_speed;
    cfg.max_speed = o.max_speed;
    cfg.width = o.width;
    cfg.height = o.height;
    cfg.comm_range = o.range;
    cfg.lim = o.lim;
    cfg.mobility = o.mobility == "waypoint" ? sim::Mobility::RandomWaypoint : sim::Mobility::RandomWalk;
    cfg.join_rate = o.join_rate;
    cfg.proof_rounds = o.rounds;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("invalid simulation config: ") + e.what());
    }
    results.push_back(sim::run_experiment(cfg));
  }
  write_file(o.csv_path, sim::to_csv(results));
  write_file(o.json_path, sim::to_json(results));
  out << sim::format_table(results);
  out << "csv: " << o.csv_path << '\n';
  out << "json: " << o.json_path << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- stores

void print_table(std::ostream& out, std::string_view name, std::span<const std::string_view> columns,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    width[c] = columns[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  out << name << " (" << rows.size() << " rows)\n";
  auto line = [&](auto cell) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out << "  ";
      const int w = c + 1 < columns.size() ? static_cast<int>(width[c]) : 0;
      out << std::left << std::setw(w) << cell(c);
    }
    out << '\n';
  };
  line([&](std::size_t c) { return std::string(columns[c]); });
  for (const auto& r : rows) line([&](std::size_t c) { return r[c]; });
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  read_store(path);
  StoreTables t = parse_tables(read_text(path));
  print_table(out, "certificateStore", kCertificateStoreColumns, t.certificate_store);
  out << '\n';
  print_table(out, "keyStore", kKeyStoreColumns, t.key_store);
  out << '\n';
  print_table(out, "myStore", kMyStoreColumns, t.my_store);
  return kExitOk;
}

int cmd_merge(const std::string& own_path, const std::string& other_path, std::size_t lim,
              const std::string& out_path, std::ostream& out) {
  if (lim == 0) throw InputError("--lim must be positive");
  Node own = read_store(own_path);
  Node other = read_store(other_path);
  Node merged{own.identity, update_keystore(own.store, other.store, lim)};
  std::string text = render_store_file(merged);
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
    out << "merged store: " << merged.store.size() << " ids -> " << out_path << '\n';
  }
  return kExitOk;
}

/// Writes two store files for A and B. Sharing: A-X-B, so both hold X.
/// Disjoint: A-X and B-Y, nothing in common.
int cmd_pair(const std::string& path_a, const std::string& path_b, bool disjoint,
             std::optional<std::uint64_t> seed, int bits, int vertices, std::ostream& out) {
  Rng rng(seed ? *seed : default_seed());
  auto identity = [&](const std::string& name) {
    return make_identity(name, random_keypair(bits, vertices, rng));
  };
  Identity a = identity("A");
  Identity b = identity("B");
  Identity x = identity("X");
  Identity y = disjoint ? identity("Y") : x;

  auto store_of = [](const Identity& owner, const Identity& friend_) {
    CertificateGraph g;
    g.add_vertex(owner.id, owner.public_key());
    g.add_vertex(friend_.id, friend_.public_key());
    g.add_edge(issue_certificate(owner.id, owner.keys, friend_.id, friend_.public_key(), 0),
               issue_certificate(friend_.id, friend_.keys, owner.id, owner.public_key(), 0));
    return Node{owner, KeyStore(owner.id, std::move(g), kDefaultStoreLimit)};
  };
  write_file(path_a, render_store_file(store_of(a, x)));
  write_file(path_b, render_store_file(store_of(b, y)));
  out << "A " << a.id.short_hex() << " -> " << path_a << '\n';
  out << "B " << b.id.short_hex() << " -> " << path_b << '\n';
  out << (disjoint ? "no common id\n" : "common id " + x.id.short_hex() + "\n");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-organized VANET mutual authentication toolkit", "vanetauth"};
  app.require_subcommand(1);

  KeygenOptions kg;
  std::uint64_t kg_seed = 0;
  auto* keygen = app.add_subcommand("keygen", "Generate an identity key pair from a Hamiltonian cycle");
  keygen->add_option("--p", kg.p, "First prime (with --q)");
  keygen->add_option("--q", kg.q, "Second prime (with --p)");
  keygen->add_option("--bits", kg.bits, "Prime size when --p/--q are absent")->check(CLI::Range(2, 32));
  keygen->add_option("--vertices", kg.vertices, "Cycle length")->check(CLI::Range(3, kMaxEncodedVertices));
  auto* kg_seed_opt = keygen->add_option("--seed", kg_seed, "Random seed");
  keygen->add_option("--name", kg.name, "Identity name hashed into the node ID");
  keygen->add_option("--store", kg.store_path, "Write a new store file holding this identity");

  DemoOptions dm;
  std::uint64_t dm_seed = 0;
  Timestamp dm_now = 0;
  auto* demo = app.add_subcommand("demo", "Run the full handshake between two store files");
  demo->add_option("store_a", dm.store_a, "Store file of A")->required();
  demo->add_option("store_b", dm.store_b, "Store file of B")->required();
  demo->add_option("--rounds", dm.rounds, "Zero-knowledge rounds per direction");
  auto* dm_seed_opt = demo->add_option("--seed", dm_seed, "Random seed");
  auto* dm_now_opt = demo->add_option("--now", dm_now, "Clock for expiry checks (default: latest issue time)");
  demo->add_option("--lim", dm.lim, "Key-store bound");

  SimulateOptions sm;
  std::uint64_t sm_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Mobility simulation; writes CSV and JSON");
  simulate->add_option("--nodes", sm.nodes, "Node counts, one experiment each")->expected(1, -1);
  simulate->add_option("--runs", sm.runs, "Runs per node count");
  auto* sm_seed_opt = simulate->add_option("--seed", sm_seed, "Random seed");
  simulate->add_option("--duration", sm.duration, "Ticks per run");
  simulate->add_option("--min-speed", sm.min_speed, "Minimum step length per tick");
  simulate->add_option("--max-speed", sm.max_speed, "Maximum step length per tick");
  simulate->add_option("--width", sm.width, "Area width (0: sized from node count)");
  simulate->add_option("--height", sm.height, "Area height (0: sized from node count)");
  simulate->add_option("--range", sm.range, "Communication range");
  simulate->add_option("--lim", sm.lim, "Key-store bound (0: derived from node count)");
  simulate->add_option("--mobility", sm.mobility, "walk or waypoint")
      ->check(CLI::IsMember({"walk", "waypoint"}));
  simulate->add_option("--join-rate", sm.join_rate, "Newcomer probability per tick");
  simulate->add_option("--rounds", sm.rounds, "Zero-knowledge rounds per direction");
  simulate->add_option("--csv", sm.csv_path, "Per-run CSV output");
  simulate->add_option("--json", sm.json_path, "Summary JSON output");

  auto* stores = app.add_subcommand("stores", "Inspect, merge or create store files");
  stores->require_subcommand(1);
  std::string inspect_path;
  auto* inspect = stores->add_subcommand("inspect", "Print the three tables of a store file");
  inspect->add_option("file", inspect_path)->required();

  std::string merge_own, merge_other, merge_out;
  std::size_t merge_lim = kDefaultStoreLimit;
  auto* merge = stores->add_subcommand("merge", "Update the first store from the second");
  merge->add_option("own", merge_own)->required();
  merge->add_option("other", merge_other)->required();
  merge->add_option("--lim", merge_lim, "Key-store bound");
  merge->add_option("--out", merge_out, "Output file (default: standard output)");

  std::string pair_a = "A.store", pair_b = "B.store";
  bool pair_disjoint = false;
  std::uint64_t pair_seed = 0;
  int pair_bits = 16, pair_vertices = 7;
  auto* pair = stores->add_subcommand("pair", "Write two store files for a demo");
  pair->add_option("--out-a", pair_a, "Store file of A");
  pair->add_option("--out-b", pair_b, "Store file of B");
  pair->add_flag("--disjoint", pair_disjoint, "No common trusted ID");
  auto* pair_seed_opt = pair->add_option("--seed", pair_seed, "Random seed");
  pair->add_option("--bits", pair_bits, "Prime size")->check(CLI::Range(8, 32));
  pair->add_option("--vertices", pair_vertices, "Cycle length")->check(CLI::Range(3, 8));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  auto seed_of = [](CLI::Option* opt, std::uint64_t v) {
    return opt->count() > 0 ? std::optional<std::uint64_t>(v) : std::nullopt;
  };
  try {
    if (*keygen) {
      kg.seed = seed_of(kg_seed_opt, kg_seed);
      return cmd_keygen(kg, out, err);
    }
    if (*demo) {
      dm.seed = seed_of(dm_seed_opt, dm_seed);
      if (dm_now_opt->count() > 0) dm.now = dm_now;
      return cmd_demo(dm, out, err);
    }
    if (*simulate) {
      sm.seed = seed_of(sm_seed_opt, sm_seed);
      return cmd_simulate(sm, out);
    }
    if (*inspect) return cmd_inspect(inspect_path, out);
    if (*merge) return cmd_merge(merge_own, merge_other, merge_lim, merge_out, out);
    if (*pair) {
      return cmd_pair(pair_a, pair_b, pair_disjoint, seed_of(pair_seed_opt, pair_seed), pair_bits,
                      pair_vertices, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace vanetauth::cli
