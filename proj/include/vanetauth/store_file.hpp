#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vanetauth/keystore.hpp"

namespace vanetauth {

// Text persistence of one node's state as three tables:
//
//   certificateStore(idcolumn,idA,idB,certAB,certBA,date)
//   keyStore(idcolumn,idA,PseuA,module,publicKey,secretKey,degree)
//   myStore(idcolumn,idA,PseuA,modulo,publicKey,privateKey,secretKey,degree)
//
// Each table starts with its schema line, followed by comma-separated rows.
// IDs and pseudonyms are hex; "-" marks an unknown pseudonym. `date` holds
// both certificates' validity windows as issuedAB:expiresAB:issuedBA:expiresBA.
// Lines starting with '#' are comments.

inline constexpr std::string_view kCertificateStoreSchema =
    "certificateStore(idcolumn,idA,idB,certAB,certBA,date)";
inline constexpr std::string_view kKeyStoreSchema =
    "keyStore(idcolumn,idA,PseuA,module,publicKey,secretKey,degree)";
inline constexpr std::string_view kMyStoreSchema =
    "myStore(idcolumn,idA,PseuA,modulo,publicKey,privateKey,secretKey,degree)";

inline constexpr std::array<std::string_view, 6> kCertificateStoreColumns{
    "idcolumn", "idA", "idB", "certAB", "certBA", "date"};
inline constexpr std::array<std::string_view, 7> kKeyStoreColumns{
    "idcolumn", "idA", "PseuA", "module", "publicKey", "secretKey", "degree"};
inline constexpr std::array<std::string_view, 8> kMyStoreColumns{
    "idcolumn", "idA", "PseuA", "modulo", "publicKey", "privateKey", "secretKey", "degree"};

inline constexpr std::size_t kDefaultStoreLimit = 16;

class StoreFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw rows of the three tables, in file order.
struct StoreTables {
  std::vector<std::vector<std::string>> certificate_store;
  std::vector<std::vector<std::string>> key_store;
  std::vector<std::vector<std::string>> my_store;
};

StoreTables parse_tables(std::string_view text);
std::string render_store_file(const Node& node);
/// Validates every certificate; the store limit defaults to
/// max(entries, kDefaultStoreLimit). Throws StoreFormatError.
Node parse_store_file(std::string_view text, std::optional<std::size_t> lim = std::nullopt);

Node load_store_file(const std::string& path, std::optional<std::size_t> lim = std::nullopt);
void save_store_file(const std::string& path, const Node& node);

/// Smallest vertex count for which `exponent` is a valid cycle encoding, 0 if none.
int infer_cycle_vertices(std::uint64_t exponent);

}  // namespace vanetauth
