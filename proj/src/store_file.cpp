#include "vanetauth/store_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace vanetauth {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

template <typename T>
T parse_int(const std::string& s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw StoreFormatError(std::string("bad ") + what + ": '" + s + "'");
  }
  return v;
}

NodeId parse_id(const std::string& s) {
  try {
    return NodeId::from_hex_string(s);
  } catch (const std::invalid_argument&) {
    throw StoreFormatError("bad node id: '" + s + "'");
  }
}

std::optional<Pseudonym> parse_pseudonym(const std::string& s) {
  if (s == "-") return std::nullopt;
  try {
    return Pseudonym::from_hex_string(s);
  } catch (const std::invalid_argument&) {
    throw StoreFormatError("bad pseudonym: '" + s + "'");
  }
}

std::string pseudonym_cell(const std::optional<Pseudonym>& p) { return p ? p->hex() : "-"; }

}  // namespace

StoreTables parse_tables(std::string_view text) {
  StoreTables t;
  std::vector<std::vector<std::string>>* current = nullptr;
  std::size_t expected = 0;
  bool seen_cert = false, seen_key = false, seen_my = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto take_section = [&](bool& seen, auto& rows, std::size_t cols) {
      if (seen) throw StoreFormatError("duplicate section at line " + std::to_string(line_no));
      seen = true;
      current = &rows;
      expected = cols;
    };
    if (line == kCertificateStoreSchema) {
      take_section(seen_cert, t.certificate_store, kCertificateStoreColumns.size());
    } else if (line == kKeyStoreSchema) {
      take_section(seen_key, t.key_store, kKeyStoreColumns.size());
    } else if (line == kMyStoreSchema) {
      take_section(seen_my, t.my_store, kMyStoreColumns.size());
    } else {
      if (current == nullptr) {
        throw StoreFormatError("row before any table header at line " + std::to_string(line_no));
      }
      auto cells = split(line, ',');
      if (cells.size() != expected) {
        throw StoreFormatError("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(expected) + " columns, got " +
                               std::to_string(cells.size()));
      }
      current->push_back(std::move(cells));
    }
  }
  if (!seen_cert || !seen_key || !seen_my) throw StoreFormatError("store file lacks a table");
  if (t.my_store.size() != 1) throw StoreFormatError("myStore must hold exactly one row");
  return t;
}

int infer_cycle_vertices(std::uint64_t exponent) {
  for (int n = 3; n <= kMaxEncodedVertices; ++n) {
    try {
      decode_cycle(exponent, n);
      return n;
    } catch (const NotACycle&) {
    }
  }
  return 0;
}

std::string render_store_file(const Node& node) {
  const CertificateGraph& g = node.store.graph();
  std::ostringstream out;
  out << kCertificateStoreSchema << '\n';
  std::size_t row = 1;
  for (const auto& [key, certs] : g.edges()) {
    const Certificate& ab = certs.low_to_high;
    const Certificate& ba = certs.high_to_low;
    out << row++ << ',' << key.first.hex() << ',' << key.second.hex() << ',' << ab.signature << ','
        << ba.signature << ',' << ab.issued_at << ':' << ab.expires_at << ':' << ba.issued_at << ':'
        << ba.expires_at << '\n';
  }
  out << kKeyStoreSchema << '\n';
  row = 1;
  for (const auto& [id, info] : g.vertices()) {
    if (id == node.id()) continue;
    out << row++ << ',' << id.hex() << ',' << pseudonym_cell(info.pseudonym) << ','
        << info.key.modulus << ',' << info.key.exponent << ',' << info.secret_key << ','
        << g.degree(id) << '\n';
  }
  const auto& self = g.vertex(node.id());
  const auto& keys = node.identity.keys;
  out << kMyStoreSchema << '\n';
  out << 1 << ',' << node.id().hex() << ',' << node.store.pseudonym().hex() << ',' << keys.modulus
      << ',' << keys.public_exponent << ',' << keys.private_exponent << ',' << self.secret_key << ','
      << g.degree(node.id()) << '\n';
  return out.str();
}

Node parse_store_file(std::string_view text, std::optional<std::size_t> lim) {
  StoreTables t = parse_tables(text);
  const auto& me = t.my_store.front();
  IdentityKeyPair keys;
  keys.modulus = parse_int<std::uint64_t>(me[3], "modulo");
  keys.public_exponent = parse_int<std::uint64_t>(me[4], "publicKey");
  keys.private_exponent = parse_int<std::uint64_t>(me[5], "privateKey");
  keys.cycle_vertices = infer_cycle_vertices(keys.public_exponent);
  Identity identity{parse_id(me[1]), keys};

  CertificateGraph g;
  g.add_vertex(identity.id, VertexInfo{keys.public_key(), std::nullopt,
                                       parse_int<std::uint64_t>(me[6], "secretKey")});
  for (const auto& r : t.key_store) {
    PublicKey k{parse_int<std::uint64_t>(r[4], "publicKey"), parse_int<std::uint64_t>(r[3], "module")};
    NodeId id = parse_id(r[1]);
    if (g.has_vertex(id)) throw StoreFormatError("duplicate keyStore entry " + r[1]);
    g.add_vertex(id, VertexInfo{k, parse_pseudonym(r[2]), parse_int<std::uint64_t>(r[5], "secretKey")});
  }
  for (const auto& r : t.certificate_store) {
    NodeId a = parse_id(r[1]);
    NodeId b = parse_id(r[2]);
    auto window = split(r[5], ':');
    if (window.size() != 4) throw StoreFormatError("bad date cell: '" + r[5] + "'");
    if (!g.has_vertex(a) || !g.has_vertex(b)) {
      throw StoreFormatError("certificate references an unknown node");
    }
    Certificate ab{a, b, g.vertex(b).key, parse_int<std::uint64_t>(r[3], "certAB"),
                   parse_int<Timestamp>(window[0], "date"), parse_int<Timestamp>(window[1], "date")};
    Certificate ba{b, a, g.vertex(a).key, parse_int<std::uint64_t>(r[4], "certBA"),
                   parse_int<Timestamp>(window[2], "date"), parse_int<Timestamp>(window[3], "date")};
    try {
      g.add_edge(ab, ba);
    } catch (const std::exception& e) {
      throw StoreFormatError(std::string("invalid certificate pair: ") + e.what());
    }
  }
  std::size_t limit = lim.value_or(std::max(g.vertex_count(), kDefaultStoreLimit));
  try {
    return Node{identity, KeyStore(identity.id, std::move(g), limit)};
  } catch (const std::invalid_argument& e) {
    throw StoreFormatError(e.what());
  }
}

Node load_store_file(const std::string& path, std::optional<std::size_t> lim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreFormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_store_file(buf.str(), lim);
}

void save_store_file(const std::string& path, const Node& node) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render_store_file(node);
}

}  // namespace vanetauth
