#pragma once

#include <deque>
#include <string>
#include <vector>

#include "vanetauth/session.hpp"

namespace vanetauth {

/// One line of the session message log.
struct WireRecord {
  char from = 'A';
  char to = 'B';
  MessageType type{};
  Bytes wire;  // full encoded message

  Digest digest() const { return sha256(wire); }
};

/// "A->B,Z,Z1,18,<first 16 hex digits of SHA-256 of the wire bytes>"
std::string format_record(const WireRecord& r);

/// Two sessions wired back to back over an in-process FIFO transport.
/// Every message is encoded, logged, and decoded again on delivery.
class Handshake {
 public:
  Handshake(const Node& a, const Node& b, const SessionParams& params, std::uint64_t seed,
            Timestamp now);

  /// Runs until both sides are terminal or no message is in flight.
  void run();
  /// Delivers at most one queued message; false when the queue is empty.
  bool step();

  AuthSession& a() { return a_; }
  AuthSession& b() { return b_; }
  const AuthSession& a() const { return a_; }
  const AuthSession& b() const { return b_; }
  bool mutually_established() const { return a_.established() && b_.established(); }
  const std::vector<WireRecord>& log() const { return log_; }
  /// Concatenation of every wire message, for secrecy assertions.
  Bytes transcript_bytes() const;
  std::vector<std::string> transcript_lines() const;

 private:
  void post(char from, const std::vector<Message>& out);

  AuthSession a_;
  AuthSession b_;
  Timestamp now_;
  std::deque<std::pair<char, Bytes>> queue_;  // (recipient, wire)
  std::vector<WireRecord> log_;
};

}  // namespace vanetauth
