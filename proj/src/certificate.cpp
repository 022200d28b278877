#include "vanetauth/certificate.hpp"

#include <stdexcept>

namespace vanetauth {

Bytes certificate_payload(const NodeId& subject, const PublicKey& subject_key, Timestamp issued_at,
                          Timestamp expires_at) {
  Bytes out;
  append_bytes(out, subject.bytes);
  append_bytes(out, subject_key.to_bytes());
  append_u64(out, static_cast<std::uint64_t>(issued_at));
  append_u64(out, static_cast<std::uint64_t>(expires_at));
  return out;
}

Certificate issue_certificate(const NodeId& issuer, const IdentityKeyPair& issuer_keys,
                              const NodeId& subject, const PublicKey& subject_key,
                              Timestamp issued_at, Timestamp lifetime) {
  if (lifetime <= 0) throw std::invalid_argument("certificate lifetime must be positive");
  Certificate c{issuer, subject, subject_key, 0, issued_at, issued_at + lifetime};
  c.signature = sign(certificate_payload(subject, subject_key, c.issued_at, c.expires_at), issuer_keys);
  return c;
}

bool signature_valid(const Certificate& cert, const PublicKey& issuer_key) {
  if (cert.expires_at <= cert.issued_at) return false;
  return verify(certificate_payload(cert.subject, cert.subject_key, cert.issued_at, cert.expires_at),
                cert.signature, issuer_key);
}

}  // namespace vanetauth
