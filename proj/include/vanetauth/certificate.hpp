#pragma once

#include <cstdint>

#include "vanetauth/hash.hpp"
#include "vanetauth/keys.hpp"

namespace vanetauth {

/// Seconds (wall-clock or simulated).
using Timestamp = std::int64_t;

inline constexpr Timestamp kDefaultCertificateLifetime = 30LL * 24 * 3600;

/// `issuer` vouches that `subject` owns `subject_key` over [issued_at, expires_at).
struct Certificate {
  NodeId issuer;
  NodeId subject;
  PublicKey subject_key;
  std::uint64_t signature = 0;
  Timestamp issued_at = 0;
  Timestamp expires_at = 0;

  bool expired_at(Timestamp now) const { return expires_at <= now; }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Bytes covered by the issuer's signature: subject || key || validity window.
Bytes certificate_payload(const NodeId& subject, const PublicKey& subject_key, Timestamp issued_at,
                          Timestamp expires_at);

Certificate issue_certificate(const NodeId& issuer, const IdentityKeyPair& issuer_keys,
                              const NodeId& subject, const PublicKey& subject_key,
                              Timestamp issued_at,
                              Timestamp lifetime = kDefaultCertificateLifetime);

bool signature_valid(const Certificate& cert, const PublicKey& issuer_key);

}  // namespace vanetauth
