#include "vanetauth/handshake.hpp"

namespace vanetauth {

std::string format_record(const WireRecord& r) {
  Digest d = r.digest();
  std::string s;
  s += r.from;
  s += "->";
  s += r.to;
  s += ',';
  s += phase_letter(r.type);
  s += ',';
  s += label(r.type);
  s += ',';
  s += std::to_string(r.wire.size());
  s += ',';
  s += to_hex(std::span(d.data(), 8));
  return s;
}

Handshake::Handshake(const Node& a, const Node& b, const SessionParams& params, std::uint64_t seed,
                     Timestamp now)
    : a_(a, params, Rng::derive(seed, 1), now), b_(b, params, Rng::derive(seed, 2), now), now_(now) {
  post('A', a_.start());
  post('B', b_.start());
}

void Handshake::post(char from, const std::vector<Message>& out) {
  for (const auto& m : out) {
    WireRecord rec{from, from == 'A' ? 'B' : 'A', m.type, encode_message(m)};
    queue_.emplace_back(rec.to, rec.wire);
    log_.push_back(std::move(rec));
  }
}

bool Handshake::step() {
  if (queue_.empty()) return false;
  auto [to, wire] = std::move(queue_.front());
  queue_.pop_front();
  AuthSession& receiver = to == 'A' ? a_ : b_;
  post(to, receiver.advance(decode_message(wire), now_));
  return true;
}

void Handshake::run() {
  while (!(a_.terminal() && b_.terminal()) && step()) {
  }
}

Bytes Handshake::transcript_bytes() const {
  Bytes out;
  for (const auto& r : log_) append_bytes(out, r.wire);
  return out;
}

std::vector<std::string> Handshake::transcript_lines() const {
  std::vector<std::string> out;
  out.reserve(log_.size());
  for (const auto& r : log_) out.push_back(format_record(r));
  return out;
}

}  // namespace vanetauth
